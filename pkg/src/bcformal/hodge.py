"""Hermitian structure: inner product, C-linear Hodge star, adjoints, Laplacians, harmonic spaces."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Form, Model, Monomial, Weight, basis, conjugate, wedge
from .cohomology import from_vector, normalize_theory, to_vector
from .errors import InhomogeneousForm, SectorMismatch
from .gaussian import GaussianRational, I, ONE, ZERO
from .linalg import LinearSubspace, nullspace, solve
from .metric import HermitianMetric

__all__ = [
    "HermitianMetric",
    "HarmonicSpace",
    "inner_product",
    "volume_form",
    "hodge_star",
    "adjoint_del",
    "adjoint_delbar",
    "laplacian",
    "laplacian_matrix",
    "harmonic_space",
    "harmonic_basis",
    "LAPLACIAN_THEORIES",
]

LAPLACIAN_THEORIES = ("dolbeault", "partial", "bottChern", "aeppli")


def _monomial_pairing(metric: HermitianMetric, m1: Monomial, m2: Monomial) -> GaussianRational:
    if m1.weight != m2.weight or m1.bidegree != m2.bidegree:
        return ZERO
    h = metric.pairing(m1.holo, m2.holo)
    if not h:
        return ZERO
    a = metric.pairing(m1.anti, m2.anti)
    return h * a.conjugate()


def inner_product(model: Model, f: Form, g: Form) -> GaussianRational:
    """Hermitian product, linear in ``f`` and conjugate-linear in ``g``.

    Monomials of different weights are orthogonal.
    """
    if f and g and f.bidegrees() != g.bidegrees():
        raise SectorMismatch(f"forms live in bidegrees {sorted(f.bidegrees())} and {sorted(g.bidegrees())}")
    metric = model.metric
    total = ZERO
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            pr = _monomial_pairing(metric, m1, m2)
            if pr:
                total = total + c1 * c2.conjugate() * pr
    return total


def _vol_coefficient(model: Model) -> GaussianRational:
    n = model.n
    c = I**n
    if (n * (n - 1) // 2) & 1:
        c = -c
    return c / model.metric.volume_scale()


def volume_form(model: Model) -> Form:
    """Real volume form of unit norm; equals ``star(1)``."""
    top = tuple(range(1, model.n + 1))
    return Form({Monomial(Weight(0, 0), top, top): _vol_coefficient(model)})


def _top_coefficient(n: int, f: Form) -> GaussianRational:
    top = tuple(range(1, n + 1))
    return f.coefficient(Monomial(Weight(0, 0), top, top))


def _star_monomial(model: Model, holo: tuple[int, ...], anti: tuple[int, ...]) -> Form:
    """Star of a weight-0 monomial, determined by f ^ star(h) = <f, conj h> vol."""
    key = ("star", holo, anti)
    hit = model._cache.get(key)
    if hit is not None:
        return hit
    n = model.n
    p, q = len(holo), len(anti)
    h = Form({Monomial(Weight(0, 0), holo, anti): ONE})
    targets = basis(n, n - q, n - p)
    tests = basis(n, q, p)
    conj_h = conjugate(h)
    v = _vol_coefficient(model)
    P = []
    rhs = []
    for t in tests:
        tf = Form({t: ONE})
        P.append([_top_coefficient(n, wedge(tf, Form({x: ONE}))) for x in targets])
        rhs.append(inner_product(model, tf, conj_h) * v)
    x = solve(P, rhs, len(targets))
    if x is None:
        raise AssertionError("top-degree pairing is degenerate")
    out = from_vector(x, targets)
    model._cache[key] = out
    return out


def hodge_star(model: Model, f: Form) -> Form:
    """C-linear Hodge star ``(p,q) -> (n-q, n-p)``, weight-preserving."""
    if not f.is_homogeneous():
        raise InhomogeneousForm("hodge star needs a form of pure bidegree")
    out = Form.zero()
    for m, c in f.items():
        out = out + _star_monomial(model, m.holo, m.anti).with_weight_shift(m.weight).scale(c)
    return out


def _require_pure(f: Form) -> None:
    if not f.is_homogeneous():
        raise InhomogeneousForm("operator needs a form of pure bidegree")


def adjoint_del(model: Model, f: Form) -> Form:
    """``del* = - star delbar star``."""
    _require_pure(f)
    return -hodge_star(model, model.delbar(hodge_star(model, f)))


def adjoint_delbar(model: Model, f: Form) -> Form:
    """``delbar* = - star del star``."""
    _require_pure(f)
    return -hodge_star(model, model.del_(hodge_star(model, f)))


def laplacian(model: Model, f: Form, theory: str) -> Form:
    """Dolbeault, del, Bott-Chern or Aeppli Laplacian applied to ``f``."""
    _require_pure(f)
    theory = normalize_theory(theory)
    D = model.del_
    Db = model.delbar

    def Ds(x):
        return adjoint_del(model, x)

    def Dbs(x):
        return adjoint_delbar(model, x)

    if theory == "dolbeault":
        return Db(Dbs(f)) + Dbs(Db(f))
    if theory == "partial":
        return D(Ds(f)) + Ds(D(f))
    if theory == "bottChern":
        return (
            D(Db(Dbs(Ds(f))))  # (dd^)(dd^)*
            + Dbs(Ds(D(Db(f))))  # (dd^)*(dd^)
            + Dbs(D(Ds(Db(f))))  # (d^* d)(d^* d)*
            + Ds(Db(Dbs(D(f))))  # (d^* d)*(d^* d)
            + Dbs(Db(f))
            + Ds(D(f))
        )
    if theory == "aeppli":
        return (
            D(Ds(f))
            + Db(Dbs(f))
            + Dbs(Ds(D(Db(f))))  # (dd^)*(dd^)
            + D(Db(Dbs(Ds(f))))  # (dd^)(dd^)*
            + D(Dbs(Db(Ds(f))))  # (d^ d*)*(d^ d*)
            + Db(Ds(D(Dbs(f))))  # (d^ d*)(d^ d*)*
        )
    raise ValueError(f"no Laplacian for theory {theory!r}")


def laplacian_matrix(model: Model, theory: str, p: int, q: int, weight) -> tuple[list, list[Monomial]]:
    src = basis(model, p, q, weight)
    index = {m: i for i, m in enumerate(src)}
    M = [[ZERO] * len(src) for _ in src]
    for j, m in enumerate(src):
        img = laplacian(model, Form({m: ONE}), theory)
        for mm, c in img.items():
            M[index[mm]][j] = c
    return M, src


@dataclass(frozen=True)
class HarmonicSpace:
    """Kernel of a Laplacian on one bidegree (all admissible weights unless restricted)."""

    theory: str
    bidegree: tuple[int, int]
    weights: tuple[Weight, ...]
    sector: tuple[Monomial, ...]
    subspace: LinearSubspace

    @property
    def dimension(self) -> int:
        return self.subspace.dim

    dim = dimension

    @property
    def basis(self) -> list[Form]:
        return [from_vector(v, self.sector) for v in self.subspace.basis]

    def contains(self, f: Form) -> bool:
        try:
            v = to_vector(f, self.sector)
        except SectorMismatch:
            return False
        return self.subspace.contains(v)

    __contains__ = contains


def harmonic_space(model: Model, theory: str, p: int, q: int, weight=None) -> HarmonicSpace:
    theory = normalize_theory(theory)
    weights = tuple(model.weights()) if weight is None else (Weight(*weight),)
    key = ("harm", theory, p, q, weights)
    hit = model._cache.get(key)
    if hit is not None:
        return hit
    sector: list[Monomial] = []
    vectors = []
    for w in weights:
        M, src = laplacian_matrix(model, theory, p, q, w)
        offset = len(sector)
        sector.extend(src)
        for v in nullspace(M, len(src)):
            vectors.append((offset, v))
    total = len(sector)
    padded = []
    for offset, v in vectors:
        row = [ZERO] * total
        row[offset : offset + len(v)] = v
        padded.append(row)
    space = HarmonicSpace(theory, (p, q), weights, tuple(sector), LinearSubspace(total, padded))
    model._cache[key] = space
    return space


def harmonic_basis(model: Model, theory: str) -> list[tuple[tuple[int, int], Form]]:
    """All harmonic basis forms, ordered by bidegree then echelon order."""
    out = []
    for p in range(model.n + 1):
        for q in range(model.n + 1):
            for f in harmonic_space(model, theory, p, q).basis:
                out.append(((p, q), f))
    return out
