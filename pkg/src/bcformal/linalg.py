"""Exact linear algebra over Q(i): reduced row echelon form, kernels, images, solves.

Matrices are lists of rows; vectors are lists of :class:`GaussianRational`.
A matrix with ``m`` rows and ``n`` columns maps coordinate vectors of length
``n`` to vectors of length ``m``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .gaussian import GaussianRational, ONE, ZERO

__all__ = [
    "Matrix",
    "Vector",
    "rref",
    "rank",
    "nullspace",
    "image",
    "solve",
    "matmul",
    "matvec",
    "transpose",
    "zeros",
    "identity",
    "LinearSubspace",
]

Vector = list
Matrix = list


def zeros(m: int, n: int) -> Matrix:
    return [[ZERO] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matvec(A: Matrix, x: Sequence[GaussianRational]) -> Vector:
    out = []
    for row in A:
        s = ZERO
        for a, b in zip(row, x):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def matmul(A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    if not A:
        return []
    ncols = len(B[0]) if B else 0
    out = zeros(len(A), ncols)
    for i, row in enumerate(A):
        target = out[i]
        for k, a in enumerate(row):
            if not a:
                continue
            for j, b in enumerate(B[k]):
                if b:
                    target[j] = target[j] + a * b
    return out


def rref(rows: Iterable[Sequence[GaussianRational]], ncols: int) -> tuple[Matrix, list[int]]:
    """Gauss-Jordan elimination; returns the nonzero rows of the RREF and the pivot columns.

    Columns are scanned left to right and the first usable row (top-down) is the
    pivot row, so the result is canonical for the row space.
    """
    M = [list(r) for r in rows]
    for r in M:
        if len(r) != ncols:
            raise ValueError("row length does not match column count")
    pivots: list[int] = []
    lead = 0
    nrows = len(M)
    for col in range(ncols):
        if lead >= nrows:
            break
        piv = None
        for r in range(lead, nrows):
            if M[r][col]:
                piv = r
                break
        if piv is None:
            continue
        M[lead], M[piv] = M[piv], M[lead]
        prow = M[lead]
        inv = prow[col].inverse()
        if inv != ONE:
            prow = [x * inv if x else ZERO for x in prow]
            M[lead] = prow
        for r in range(nrows):
            if r == lead:
                continue
            f = M[r][col]
            if f:
                row = M[r]
                M[r] = [a - f * b if b else a for a, b in zip(row, prow)]
        pivots.append(col)
        lead += 1
    return M[:lead], pivots


def rank(A: Matrix, ncols: int) -> int:
    return len(rref(A, ncols)[1])


def nullspace(A: Matrix, ncols: int) -> list[Vector]:
    """Basis of ``{x : A x = 0}``, one vector per free column, in column order."""
    R, pivots = rref(A, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row, pc in zip(R, pivots):
            if row[free]:
                v[pc] = -row[free]
        basis.append(v)
    return basis


def image(A: Matrix, ncols: int) -> list[Vector]:
    """Spanning set of the column space of ``A`` (the columns themselves)."""
    if not A:
        return []
    return [[A[i][j] for i in range(len(A))] for j in range(ncols)]


def solve(A: Matrix, b: Sequence[GaussianRational], ncols: int) -> Vector | None:
    """Some ``x`` with ``A x = b``, free variables set to zero; ``None`` if inconsistent."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


class LinearSubspace:
    """A subspace of ``Q(i)^ambient`` stored as a canonical RREF basis.

    Two subspaces are equal iff their reduced bases coincide.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence[GaussianRational]] = ()):
        self.ambient = ambient
        self.basis, self.pivots = rref(vectors, ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence[GaussianRational]) -> Vector:
        """Remainder of ``v`` after eliminating the pivot coordinates of this subspace."""
        out = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = out[pc]
            if f:
                out = [a - f * b if b else a for a, b in zip(out, row)]
        return out

    def contains(self, v: Sequence[GaussianRational]) -> bool:
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence[GaussianRational]) -> Vector | None:
        """Coordinates of ``v`` in the reduced basis, or ``None`` if ``v`` is outside."""
        if not self.contains(v):
            return None
        return [v[pc] for pc in self.pivots]

    def __add__(self, other: LinearSubspace) -> LinearSubspace:
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return LinearSubspace(self.ambient, self.basis + other.basis)

    def intersection(self, other: LinearSubspace) -> LinearSubspace:
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        if not self.basis or not other.basis:
            return LinearSubspace(self.ambient)
        # x in both iff x = sum a_i u_i = sum b_j w_j
        k = self.dim
        cols = self.basis + [[-c for c in w] for w in other.basis]
        M = transpose(cols)
        sols = nullspace(M, len(cols))
        vecs = []
        for s in sols:
            v = [ZERO] * self.ambient
            for coeff, u in zip(s[:k], self.basis):
                if coeff:
                    v = [a + coeff * b for a, b in zip(v, u)]
            vecs.append(v)
        return LinearSubspace(self.ambient, vecs)

    def __eq__(self, other):
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, tuple(tuple(r) for r in self.basis)))

    def __repr__(self):
        return f"LinearSubspace(ambient={self.ambient}, dim={self.dim})"
