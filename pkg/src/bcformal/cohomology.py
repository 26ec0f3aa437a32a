"""De Rham, Dolbeault, del-, Bott-Chern and Aeppli cohomology of a model.

Every group is computed on the whole bidegree (all admissible weights at once,
weight-major basis order) unless a single weight is requested.  The operators
preserve weight, so the result is the direct sum of the per-weight groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebra import Form, Model, Monomial, Weight, sector_basis
from .errors import InvalidTheoryDegree, NotACocycle, SectorMismatch
from .gaussian import GaussianRational, ONE, ZERO
from .linalg import LinearSubspace, Vector, nullspace

__all__ = [
    "THEORIES",
    "normalize_theory",
    "CohomologyGroup",
    "compute",
    "class_of",
    "dimension_table",
    "betti_numbers",
    "delta_k",
    "ddbar_lemma",
    "operator_matrix",
    "to_vector",
    "from_vector",
]

THEORIES = ("deRham", "dolbeault", "partial", "bottChern", "aeppli")

_ALIASES = {
    "derham": "deRham",
    "dr": "deRham",
    "dolbeault": "dolbeault",
    "delbar": "dolbeault",
    "partial": "partial",
    "del": "partial",
    "bottchern": "bottChern",
    "bc": "bottChern",
    "aeppli": "aeppli",
    "a": "aeppli",
}


def normalize_theory(name: str) -> str:
    key = name.lower().replace("_", "").replace("-", "")
    try:
        return _ALIASES[key]
    except KeyError:
        raise InvalidTheoryDegree(f"unknown cohomology theory {name!r}") from None


# -- operator plumbing --------------------------------------------------------

def _ddbar(model: Model, f: Form) -> Form:
    return model.del_(model.delbar(f))


_OPS: dict[str, Callable[[Model, Form], Form]] = {
    "del": lambda m, f: m.del_(f),
    "delbar": lambda m, f: m.delbar(f),
    "ddbar": _ddbar,
    "d": lambda m, f: m.d(f),
}


def to_vector(f: Form, basis: Sequence[Monomial], index: dict | None = None) -> Vector:
    index = index if index is not None else {m: i for i, m in enumerate(basis)}
    v = [ZERO] * len(basis)
    for m, c in f.items():
        pos = index.get(m)
        if pos is None:
            raise SectorMismatch(f"monomial {m.word()} is outside the sector")
        v[pos] = c
    return v


def from_vector(v: Sequence[GaussianRational], basis: Sequence[Monomial]) -> Form:
    return Form({m: c for m, c in zip(basis, v) if c})


def operator_matrix(
    model: Model, op: str, src: Sequence[Monomial], dst: Sequence[Monomial]
) -> list[list[GaussianRational]]:
    """Matrix (rows = ``dst``) of one of ``del``, ``delbar``, ``ddbar``, ``d``."""
    fn = _OPS[op]
    index = {m: i for i, m in enumerate(dst)}
    M = [[ZERO] * len(src) for _ in range(len(dst))]
    for j, m in enumerate(src):
        img = fn(model, Form._raw({m: ONE}))
        for mm, c in img.items():
            pos = index.get(mm)
            if pos is None:
                raise SectorMismatch(f"{op} of {m.word()} leaves the target sector")
            M[pos][j] = c
    return M


def _bidegree_basis(model: Model, p: int, q: int, weights) -> list[Monomial]:
    if not (0 <= p <= model.n and 0 <= q <= model.n):
        return []
    return sector_basis(model, p, q, weights)


def _degree_basis(model: Model, k: int, weights) -> list[Monomial]:
    out: list[Monomial] = []
    for p in range(0, k + 1):
        out.extend(_bidegree_basis(model, p, k - p, weights))
    return out


# -- groups -------------------------------------------------------------------

@dataclass(frozen=True)
class CohomologyGroup:
    """One cohomology group with metric-free representatives.

    Representatives are the reduced echelon completion of the cycles modulo
    the boundaries in the deterministic monomial order.  ``class_of`` returns
    exact coordinates in that basis.
    """

    model: Model
    theory: str
    bidegree: tuple[int, int] | None
    degree: int
    weights: tuple[Weight, ...]
    basis: tuple[Monomial, ...]
    cocycle_ops: tuple[tuple[str, tuple[Monomial, ...]], ...]
    boundaries: LinearSubspace
    cycles_dim: int
    quotient: LinearSubspace
    _index: dict = field(compare=False, repr=False, hash=False, default_factory=dict)

    @property
    def dimension(self) -> int:
        return self.quotient.dim

    dim = dimension

    @property
    def representatives(self) -> list[Form]:
        return [from_vector(v, self.basis) for v in self.quotient.basis]

    def vector(self, f: Form) -> Vector:
        if not self._index:
            self._index.update({m: i for i, m in enumerate(self.basis)})
        return to_vector(f, self.basis, self._index)

    def is_cocycle(self, f: Form) -> bool:
        for op, dst in self.cocycle_ops:
            fn = _OPS[op]
            if fn(self.model, f):
                return False
        return True

    def class_of(self, f: Form) -> Vector:
        """Coordinates of ``[f]``; the zero vector exactly when ``f`` is a coboundary."""
        v = self.vector(f)
        if not self.is_cocycle(f):
            raise NotACocycle(f"{f} is not a {self.theory} cocycle")
        r = self.boundaries.reduce(v)
        coords = [r[pc] for pc in self.quotient.pivots]
        # r must equal the combination of representatives
        check = list(r)
        for c, row in zip(coords, self.quotient.basis):
            if c:
                check = [a - c * b if b else a for a, b in zip(check, row)]
        if any(check):
            raise AssertionError("cocycle does not reduce into the representative span")
        return coords

    def is_zero_class(self, f: Form) -> bool:
        return not any(self.class_of(f))

    def form_of(self, coords: Sequence[GaussianRational]) -> Form:
        out = Form.zero()
        for c, rep in zip(coords, self.representatives):
            if c:
                out = out + rep.scale(c)
        return out

    def label(self) -> str:
        if self.bidegree is None:
            return f"H^{self.degree}_{self.theory}"
        p, q = self.bidegree
        return f"H^{{{p},{q}}}_{self.theory}"


def _quotient(ambient: int, cycles: list[Vector], boundaries: LinearSubspace) -> LinearSubspace:
    reduced = [boundaries.reduce(v) for v in cycles]
    return LinearSubspace(ambient, [r for r in reduced if any(r)])


def compute(model: Model, theory: str, p: int, q: int | None = None, weight=None) -> CohomologyGroup:
    """Cohomology group of ``model``.

    For de Rham pass the total degree as ``p`` and leave ``q`` as ``None``.
    ``weight`` restricts to one character sector.
    """
    theory = normalize_theory(theory)
    weights = tuple(model.weights()) if weight is None else (Weight(*weight),)
    key = ("H", theory, p, q, weights)
    hit = model._cache.get(key)
    if hit is not None:
        return hit
    n = model.n
    if theory == "deRham":
        if q is not None:
            raise InvalidTheoryDegree("de Rham cohomology takes a total degree only")
        k = p
        if not 0 <= k <= 2 * n:
            raise InvalidTheoryDegree(f"degree {k} out of range 0..{2 * n}")
        B0 = _degree_basis(model, k, weights)
        Bp = _degree_basis(model, k + 1, weights)
        Bm = _degree_basis(model, k - 1, weights) if k > 0 else []
        z_ops = [("d", Bp)]
        b_ops = [("d", Bm)]
        bideg = None
        degree = k
    else:
        if q is None:
            raise InvalidTheoryDegree(f"{theory} cohomology needs a bidegree (p,q)")
        if not (0 <= p <= n and 0 <= q <= n):
            raise InvalidTheoryDegree(f"bidegree ({p},{q}) out of range for n={n}")
        B0 = _bidegree_basis(model, p, q, weights)

        def nb(pp, qq):
            return _bidegree_basis(model, pp, qq, weights)

        if theory == "bottChern":
            z_ops = [("del", nb(p + 1, q)), ("delbar", nb(p, q + 1))]
            b_ops = [("ddbar", nb(p - 1, q - 1))]
        elif theory == "aeppli":
            z_ops = [("ddbar", nb(p + 1, q + 1))]
            b_ops = [("del", nb(p - 1, q)), ("delbar", nb(p, q - 1))]
        elif theory == "dolbeault":
            z_ops = [("delbar", nb(p, q + 1))]
            b_ops = [("delbar", nb(p, q - 1))]
        else:
            z_ops = [("del", nb(p + 1, q))]
            b_ops = [("del", nb(p - 1, q))]
        bideg = (p, q)
        degree = p + q
    N = len(B0)
    rows: list[list[GaussianRational]] = []
    for op, dst in z_ops:
        if dst:
            rows.extend(operator_matrix(model, op, B0, dst))
    cycles = nullspace(rows, N) if rows else [[ONE if i == j else ZERO for i in range(N)] for j in range(N)]
    bvecs: list[Vector] = []
    for op, src in b_ops:
        if src:
            M = operator_matrix(model, op, src, B0)
            bvecs.extend([[M[i][j] for i in range(N)] for j in range(len(src))])
    boundaries = LinearSubspace(N, bvecs)
    group = CohomologyGroup(
        model=model,
        theory=theory,
        bidegree=bideg,
        degree=degree,
        weights=weights,
        basis=tuple(B0),
        cocycle_ops=tuple((op, tuple(dst)) for op, dst in z_ops),
        boundaries=boundaries,
        cycles_dim=len(cycles),
        quotient=_quotient(N, cycles, boundaries),
    )
    model._cache[key] = group
    return group


def class_of(group: CohomologyGroup, f: Form) -> Vector:
    return group.class_of(f)


def dimension_table(model: Model, theory: str, weight=None) -> dict:
    """``{(p,q): dim}`` for bigraded theories, ``{k: dim}`` for de Rham."""
    theory = normalize_theory(theory)
    if theory == "deRham":
        return {k: compute(model, theory, k, weight=weight).dimension for k in range(2 * model.n + 1)}
    return {
        (p, q): compute(model, theory, p, q, weight=weight).dimension
        for p in range(model.n + 1)
        for q in range(model.n + 1)
    }


def betti_numbers(model: Model, weight=None) -> list[int]:
    table = dimension_table(model, "deRham", weight)
    return [table[k] for k in range(2 * model.n + 1)]


def delta_k(model: Model, k: int) -> int:
    """Non-Kahler degree ``sum_{p+q=k} (h_BC^{p,q} + h_BC^{n-q,n-p}) - 2 b_k``."""
    n = model.n
    total = 0
    for p in range(0, k + 1):
        q = k - p
        if 0 <= p <= n and 0 <= q <= n:
            total += compute(model, "bottChern", p, q).dimension
            total += compute(model, "bottChern", n - q, n - p).dimension
    if 0 <= k <= 2 * n:
        total -= 2 * compute(model, "deRham", k).dimension
    return total


def ddbar_lemma(model: Model) -> bool:
    return all(delta_k(model, k) == 0 for k in range(2 * model.n + 1))
