"""Geometric formality verdicts, triple Aeppli-Bott-Chern-Massey products, morphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Form, Model, Monomial, Weight, conjugate, wedge
from .cohomology import CohomologyGroup, compute, from_vector, operator_matrix, sector_basis, to_vector
from .errors import BudgetExceeded, BCFormalError, NotACocycle, NotAMorphism, ProductNotExact
from .gaussian import GaussianRational, ONE, ZERO
from .hodge import harmonic_basis, harmonic_space, laplacian
from .linalg import LinearSubspace, Vector, solve

__all__ = [
    "FormalityVerdict",
    "is_geometrically_formal",
    "MasseyInput",
    "MasseyResult",
    "massey_abc",
    "solve_ddbar",
    "BicomplexMorphism",
    "NaturalityCheck",
    "massey_naturality",
    "ObstructionReport",
    "obstruction_report",
]


# -- formality ------------------------------------------------------------------

@dataclass(frozen=True)
class FormalityVerdict:
    theory: str
    formal: bool
    witness: tuple[Form, Form] | None = None
    product: Form | None = None
    pairs_checked: int = 0

    def recheck(self, model: Model) -> bool:
        """Independently confirm a negative verdict from its witness."""
        if self.formal:
            return self.witness is None
        f, g = self.witness
        prod = model.wedge(f, g)
        return (
            not laplacian(model, f, self.theory)
            and not laplacian(model, g, self.theory)
            and bool(laplacian(model, prod, self.theory))
        )


def is_geometrically_formal(model: Model, theory: str = "bottChern") -> FormalityVerdict:
    """Is the harmonic space of the declared metric closed under the wedge product?

    Pairs of harmonic basis forms are scanned in bidegree/echelon order and the
    first pair whose product is not harmonic is returned as the witness.
    """
    from .cohomology import normalize_theory

    theory = normalize_theory(theory)
    if theory not in ("bottChern", "dolbeault"):
        raise ValueError("formality is defined for the bottChern and dolbeault theories")
    elems = harmonic_basis(model, theory)
    checked = 0
    for i, (deg_f, f) in enumerate(elems):
        for deg_g, g in elems[i:]:
            p, q = deg_f[0] + deg_g[0], deg_f[1] + deg_g[1]
            if p > model.n or q > model.n:
                continue
            checked += 1
            prod = model.wedge(f, g)
            if not prod:
                continue
            if not harmonic_space(model, theory, p, q).contains(prod):
                return FormalityVerdict(theory, False, (f, g), prod, checked)
    return FormalityVerdict(theory, True, None, None, checked)


# -- ddbar potentials -----------------------------------------------------------

def _ddbar_matrix(model: Model, p: int, q: int):
    key = ("ddbar-mat", p, q)
    hit = model._cache.get(key)
    if hit is None:
        src = sector_basis(model, p - 1, q - 1) if p >= 1 and q >= 1 else []
        dst = sector_basis(model, p, q)
        M = operator_matrix(model, "ddbar", src, dst) if src else [[] for _ in dst]
        hit = (M, src, dst)
        model._cache[key] = hit
    return hit


def solve_ddbar(model: Model, rhs: Form, bidegree: tuple[int, int] | None = None) -> Form | None:
    """Echelon solution ``x`` of ``del delbar x = rhs`` (free variables zero), or ``None``."""
    if not rhs:
        return Form.zero()
    p, q = rhs.bidegree if bidegree is None else bidegree
    if p > model.n or q > model.n:
        return Form.zero() if not rhs else None
    M, src, dst = _ddbar_matrix(model, p, q)
    if not src:
        return None
    b = to_vector(rhs, dst)
    x = solve(M, b, len(src))
    if x is None:
        return None
    return from_vector(x, src)


# -- Massey products ----------------------------------------------------------

@dataclass(frozen=True)
class MasseyInput:
    a12: Form
    a23: Form
    a34: Form


@dataclass(frozen=True)
class MasseyResult:
    """Outcome of ``<[a12], [a23], [a34]>_ABC``.

    ``coordinates`` are the Aeppli coordinates of ``representative`` in
    ``target`` and ``indeterminacy`` is a subspace of that coordinate space.
    """

    input: MasseyInput
    bidegrees: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    a13: Form
    a24: Form
    representative: Form
    target_bidegree: tuple[int, int]
    target: CohomologyGroup | None
    coordinates: tuple[GaussianRational, ...]
    indeterminacy: LinearSubspace
    vanishes: bool

    def quotient_equal(self, other: Form) -> bool:
        """Does ``other`` define the same class as the representative in the quotient?"""
        if self.target is None:
            return True
        diff = self.target.class_of(self.representative - other)
        return self.indeterminacy.contains(diff)


def _aeppli_group(model: Model, p: int, q: int) -> CohomologyGroup | None:
    if 0 <= p <= model.n and 0 <= q <= model.n:
        return compute(model, "aeppli", p, q)
    return None


def _bidegree_of(f: Form, name: str) -> tuple[int, int]:
    deg = f.bidegree
    if deg is None:
        raise NotACocycle(f"{name} is the zero form; pass a representative with a bidegree")
    return deg


def _check_bc_cocycle(model: Model, f: Form, name: str) -> None:
    if model.del_(f) or model.delbar(f):
        raise NotACocycle(f"{name} = {f} is not del- and delbar-closed")


def _product_potential(model: Model, x: Form, y: Form, sign: int, label: str) -> Form:
    prod = model.wedge(x, y)
    if not prod:
        return Form.zero()
    p, q = prod.bidegree
    bc = compute(model, "bottChern", p, q)
    if not bc.is_zero_class(prod):
        raise ProductNotExact(f"{label} is non-zero in Bott-Chern cohomology")
    pot = solve_ddbar(model, prod.scale(sign))
    if pot is None:
        raise AssertionError("Bott-Chern-exact product without a ddbar-potential")
    return pot


def indeterminacy_subspace(
    model: Model, a12: Form, a34: Form, degs: Sequence[tuple[int, int]]
) -> tuple[CohomologyGroup | None, LinearSubspace]:
    (p, q), (r, s), (u, v) = degs
    P, Q = p + r + u - 1, q + s + v - 1
    target = _aeppli_group(model, P, Q)
    if target is None:
        return None, LinearSubspace(0)
    gens = []
    left = _aeppli_group(model, r + u - 1, s + v - 1)
    if left is not None:
        for h in left.representatives:
            prod = model.wedge(a12, h)
            if prod:
                gens.append(target.class_of(prod))
    right = _aeppli_group(model, p + r - 1, q + s - 1)
    if right is not None:
        for h in right.representatives:
            prod = model.wedge(h, a34)
            if prod:
                gens.append(target.class_of(prod))
    return target, LinearSubspace(target.dimension, gens)


def massey_abc(
    model: Model,
    data: MasseyInput | Sequence[Form],
    potentials: tuple[Form | None, Form | None] | None = None,
) -> MasseyResult:
    """Triple Aeppli-Bott-Chern-Massey product of three Bott-Chern classes.

    Potentials solve ``(-1)^{p+q} a12^a23 = ddbar a13`` and
    ``(-1)^{r+s} a23^a34 = ddbar a24``; explicit ``potentials`` are verified
    and used instead of the echelon solution.
    """
    if not isinstance(data, MasseyInput):
        data = MasseyInput(*data)
    a12, a23, a34 = data.a12, data.a23, data.a34
    for name, f in (("a12", a12), ("a23", a23), ("a34", a34)):
        _check_bc_cocycle(model, f, name)
    degs = (_bidegree_of(a12, "a12"), _bidegree_of(a23, "a23"), _bidegree_of(a34, "a34"))
    (p, q), (r, s), (u, v) = degs
    s12 = -1 if (p + q) & 1 else 1
    s23 = -1 if (r + s) & 1 else 1
    a13 = _product_potential(model, a12, a23, s12, "a12 ^ a23")
    a24 = _product_potential(model, a23, a34, s23, "a23 ^ a34")
    if potentials is not None:
        given13, given24 = potentials
        if given13 is not None:
            if model.del_(model.delbar(given13)) != model.wedge(a12, a23).scale(s12):
                raise ValueError("supplied a13 does not solve ddbar a13 = (-1)^{p+q} a12^a23")
            a13 = given13
        if given24 is not None:
            if model.del_(model.delbar(given24)) != model.wedge(a23, a34).scale(s23):
                raise ValueError("supplied a24 does not solve ddbar a24 = (-1)^{r+s} a23^a34")
            a24 = given24
    rho = model.wedge(a12, a24).scale(s12) - model.wedge(a13, a34).scale(s23)
    if model.del_(model.delbar(rho)):
        raise AssertionError("Massey representative is not ddbar-closed")
    target, indet = indeterminacy_subspace(model, a12, a34, degs)
    P, Q = p + r + u - 1, q + s + v - 1
    if target is None:
        coords: tuple = ()
        vanishes = True
    else:
        coords = tuple(target.class_of(rho))
        vanishes = indet.contains(list(coords))
    return MasseyResult(data, degs, a13, a24, rho, (P, Q), target, coords, indet, vanishes)


# -- morphisms ------------------------------------------------------------------

@dataclass(frozen=True)
class BicomplexMorphism:
    """Multiplicative map determined by the images of the holomorphic generators.

    Conjugate generators go to the conjugated images unless ``anti_images`` is
    given; character weights pass through unchanged.
    """

    source: Model
    target: Model
    images: tuple[Form, ...]
    anti_images: tuple[Form, ...] | None = None
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def identity(cls, model: Model) -> BicomplexMorphism:
        return cls(model, model, tuple(Form.generator(k) for k in range(1, model.n + 1)))

    def _anti(self, k: int) -> Form:
        if self.anti_images is not None:
            return self.anti_images[k - 1]
        return conjugate(self.images[k - 1])

    def _on_monomial(self, m: Monomial) -> Form:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        out = Form.one(m.weight)
        for i in m.holo:
            out = wedge(out, self.images[i - 1])
        for j in m.anti:
            out = wedge(out, self._anti(j))
        self.target.check_window(out)
        self._cache[m] = out
        return out

    def __call__(self, x: Form) -> Form:
        out = Form.zero()
        for m, c in x.items():
            out = out + self._on_monomial(m).scale(c)
        return out

    apply = __call__

    def problems(self) -> list[str]:
        out = []
        if len(self.images) != self.source.n:
            return [f"expected {self.source.n} generator images, got {len(self.images)}"]
        probes = [Form.generator(k) for k in range(1, self.source.n + 1)]
        probes += [Form.conj_generator(k) for k in range(1, self.source.n + 1)]
        probes += [Form.one(w) for w in self.source.weights() if w != Weight(0, 0)]
        for x in probes:
            try:
                fx = self(x)
            except BCFormalError as exc:
                out.append(f"image of {x} invalid: {exc}")
                continue
            if fx and fx.bidegree != x.bidegree:
                out.append(f"image of {x} has bidegree {fx.bidegree}")
            if self(self.source.del_(x)) != self.target.del_(fx):
                out.append(f"does not commute with del on {x}")
            if self(self.source.delbar(x)) != self.target.delbar(fx):
                out.append(f"does not commute with delbar on {x}")
        return out

    def validate(self) -> BicomplexMorphism:
        bad = self.problems()
        if bad:
            raise NotAMorphism("; ".join(bad))
        return self


def apply_morphism(f: BicomplexMorphism, x: Form) -> Form:
    return f(x)


@dataclass(frozen=True)
class NaturalityCheck:
    upstream: MasseyResult
    downstream: MasseyResult
    pushed: Form
    holds: bool


def massey_naturality(f: BicomplexMorphism, data: MasseyInput | Sequence[Form]) -> NaturalityCheck:
    """Compare ``f(<a,b,c>)`` with ``<f a, f b, f c>`` modulo downstream indeterminacy."""
    f.validate()
    if not isinstance(data, MasseyInput):
        data = MasseyInput(*data)
    up = massey_abc(f.source, data)
    pushed_input = MasseyInput(f(data.a12), f(data.a23), f(data.a34))
    pushed = f(up.representative)
    if any(not x for x in (pushed_input.a12, pushed_input.a23, pushed_input.a34)):
        # a zero entry makes every product in the target vanish
        down = _vanishing_result(f.target, pushed_input, up.target_bidegree)
        holds = _zero_in_target(f.target, pushed, up.target_bidegree)
        return NaturalityCheck(up, down, pushed, holds)
    down = massey_abc(f.target, pushed_input)
    if down.target is None:
        return NaturalityCheck(up, down, pushed, True)
    holds = down.quotient_equal(pushed)
    return NaturalityCheck(up, down, pushed, holds)


def _zero_in_target(model: Model, x: Form, deg: tuple[int, int]) -> bool:
    group = _aeppli_group(model, *deg)
    if group is None or not x:
        return True
    return group.is_zero_class(x)


def _vanishing_result(model: Model, data: MasseyInput, deg: tuple[int, int]) -> MasseyResult:
    group = _aeppli_group(model, *deg)
    dim = group.dimension if group is not None else 0
    return MasseyResult(
        data, ((0, 0), (0, 0), (0, 0)), Form.zero(), Form.zero(), Form.zero(), deg, group,
        tuple(ZERO for _ in range(dim)), LinearSubspace(dim), True,
    )


# -- obstruction scan -----------------------------------------------------------

@dataclass(frozen=True)
class ObstructionReport:
    model: str
    candidates: int
    triples_examined: int
    triples_defined: int
    nonvanishing: tuple[MasseyResult, ...]
    verdict: FormalityVerdict
    coefficient_bound: int
    note: str

    @property
    def obstructed(self) -> bool:
        return bool(self.nonvanishing)


def _candidate_classes(model: Model, bound: int) -> list[tuple[tuple[int, int], Form]]:
    out = []
    for p in range(model.n + 1):
        for q in range(model.n + 1):
            if p + q == 0:
                continue
            space = harmonic_space(model, "bottChern", p, q)
            forms = space.basis
            if bound <= 0 or len(forms) <= 1:
                out.extend(((p, q), f) for f in forms)
                continue
            seen = set()
            rng = range(-bound, bound + 1)
            for coeffs in itertools.product(rng, repeat=len(forms)):
                nz = [c for c in coeffs if c]
                if not nz or nz[0] < 0:
                    continue
                if coeffs in seen:
                    continue
                seen.add(coeffs)
                combo = Form.zero()
                for c, f in zip(coeffs, forms):
                    if c:
                        combo = combo + f.scale(c)
                out.append(((p, q), combo))
    return out


def obstruction_report(
    model: Model, budget: int = 100_000, coefficient_bound: int = 0, stop_at_first: bool = False
) -> ObstructionReport:
    """Scan triples of Bott-Chern harmonic classes for non-vanishing ABC-Massey products.

    Candidates are the harmonic basis forms of positive degree; with
    ``coefficient_bound = k > 0`` every integer combination with entries in
    ``[-k, k]`` inside one bidegree is added.  Raises :class:`BudgetExceeded`
    when more than ``budget`` defined triples would be evaluated.
    """
    cands = _candidate_classes(model, coefficient_bound)
    n = model.n
    zero_product: dict[tuple[int, int], bool] = {}

    def product_vanishes(i: int, j: int) -> bool:
        key = (i, j)
        hit = zero_product.get(key)
        if hit is None:
            (p, q), x = cands[i]
            (r, s), y = cands[j]
            if p + r > n or q + s > n:
                hit = True
            else:
                prod = model.wedge(x, y)
                hit = not prod or compute(model, "bottChern", p + r, q + s).is_zero_class(prod)
            zero_product[key] = hit
        return hit

    examined = defined = 0
    found: list[MasseyResult] = []
    N = len(cands)
    for i in range(N):
        for j in range(N):
            if not product_vanishes(i, j):
                continue
            for k in range(N):
                examined += 1
                if not product_vanishes(j, k):
                    continue
                (p, q), _ = cands[i]
                (r, s), _ = cands[j]
                (u, v), _ = cands[k]
                P, Q = p + r + u - 1, q + s + v - 1
                if not (0 <= P <= n and 0 <= Q <= n):
                    continue
                if compute(model, "aeppli", P, Q).dimension == 0:
                    continue
                defined += 1
                if defined > budget:
                    raise BudgetExceeded(f"more than {budget} defined triples on {model.name}")
                res = massey_abc(model, (cands[i][1], cands[j][1], cands[k][1]))
                if not res.vanishes:
                    found.append(res)
                    if stop_at_first:
                        break
            if found and stop_at_first:
                break
        if found and stop_at_first:
            break
    verdict = is_geometrically_formal(model, "bottChern")
    if found and verdict.formal:
        raise BCFormalError(
            "internal inconsistency: non-vanishing ABC-Massey product on a geometrically-BC-formal metric"
        )
    note = (
        "scan covers triples of Bott-Chern harmonic basis classes"
        + (f" and integer combinations with |coefficient| <= {coefficient_bound}" if coefficient_bound else "")
        + "; a complete enumeration of all classes is not attempted"
    )
    return ObstructionReport(
        model.name, N, examined, defined, tuple(found), verdict, coefficient_bound, note
    )
