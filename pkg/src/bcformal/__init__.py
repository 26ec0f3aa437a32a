"""Exact Bott-Chern/Aeppli cohomology, geometric formality and ABC-Massey products
for finite invariant-form bicomplexes of complex (nil/solv)manifolds."""

from .gaussian import GaussianRational, GR, I
from .algebra import (
    Form,
    Model,
    Monomial,
    Weight,
    WeightWindow,
    basis,
    conjugate,
    del_,
    delbar,
    validate,
    wedge,
)
from .metric import HermitianMetric

__version__ = "0.1.0"
