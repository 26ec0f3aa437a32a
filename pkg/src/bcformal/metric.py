"""Hermitian metrics on the declared (1,0)-coframe."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .gaussian import GaussianRational, ONE, ZERO

__all__ = ["HermitianMetric", "determinant"]


def determinant(M: Sequence[Sequence[GaussianRational]]) -> GaussianRational:
    n = len(M)
    if n == 0:
        return ONE
    A = [list(r) for r in M]
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c]
        inv = A[c][c].inverse()
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det


class HermitianMetric:
    """Gram matrix ``gram[j][k] = <phi^j, phi^k>`` of the (1,0)-coframe.

    The default (``gram=None``) declares the coframe unitary.
    """

    __slots__ = ("n", "gram", "_cache")

    def __init__(self, n: int, gram: Sequence[Sequence] | None = None):
        self.n = n
        if gram is None:
            g = tuple(tuple(ONE if j == k else ZERO for k in range(n)) for j in range(n))
        else:
            g = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in gram)
            if len(g) != n or any(len(row) != n for row in g):
                raise ValueError(f"gram matrix must be {n}x{n}")
        self.gram = g
        self._cache = {}

    @classmethod
    def identity(cls, n: int) -> HermitianMetric:
        return cls(n)

    def is_identity(self) -> bool:
        return all(
            self.gram[j][k] == (ONE if j == k else ZERO) for j in range(self.n) for k in range(self.n)
        )

    def problems(self) -> list[str]:
        """Reasons this matrix is not Hermitian positive-definite (empty if fine)."""
        out = []
        g = self.gram
        for j in range(self.n):
            for k in range(self.n):
                if g[j][k] != g[k][j].conjugate():
                    out.append(f"gram[{j + 1}][{k + 1}] is not the conjugate of gram[{k + 1}][{j + 1}]")
        if out:
            return out
        for m in range(1, self.n + 1):
            minor = determinant([row[:m] for row in g[:m]])
            if not (minor.is_real() and minor.re > 0):
                out.append(f"leading principal minor of order {m} is not positive ({minor})")
        return out

    def pairing(self, left: tuple[int, ...], right: tuple[int, ...]) -> GaussianRational:
        """``<phi^left, phi^right>`` on wedge products of (1,0)-generators (1-based indices)."""
        if len(left) != len(right):
            return ZERO
        key = (left, right)
        hit = self._cache.get(key)
        if hit is None:
            hit = determinant([[self.gram[j - 1][k - 1] for k in right] for j in left])
            self._cache[key] = hit
        return hit

    def volume_scale(self) -> GaussianRational:
        """``det(gram)``, real and positive for a valid metric."""
        return determinant(self.gram)

    def __eq__(self, other):
        if not isinstance(other, HermitianMetric):
            return NotImplemented
        return self.n == other.n and self.gram == other.gram

    def __hash__(self):
        return hash((self.n, self.gram))

    def __repr__(self):
        if self.is_identity():
            return f"HermitianMetric.identity({self.n})"
        return f"HermitianMetric({self.n}, {[[str(x) for x in r] for r in self.gram]})"
