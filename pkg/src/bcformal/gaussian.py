"""Exact arithmetic in the Gaussian rationals Q(i)."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["GaussianRational", "GR", "ZERO", "ONE", "I"]

_RAT = r"[-+]?\d+(?:/\d+)?"
_COEFF_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})(?P<im>[-+](?:\d+(?:/\d+)?)?i)?|(?P<pure>[-+]?(?:\d+(?:/\d+)?)?)i)\s*$"
)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """A number ``re + im*i`` with rational parts. Immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        if isinstance(x, str):
            return cls.parse(x)
        return cls(x, 0)

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse ``<rat> | <rat>i | <rat>+<rat>i | <rat>-<rat>i``.

        A bare ``i`` or ``-i`` is accepted as shorthand for ``1i``/``-1i``.
        """
        s = text.replace(" ", "")
        m = _COEFF_RE.match(s)
        if not m:
            raise ValueError(f"malformed Gaussian rational: {text!r}")
        if m.group("pure") is not None:
            body = m.group("pure")
            if body in ("", "+"):
                body = "1"
            elif body == "-":
                body = "-1"
            return cls(0, Fraction(body))
        re_part = Fraction(m.group("re"))
        im_txt = m.group("im")
        if im_txt is None:
            return cls(re_part, 0)
        body = im_txt[:-1]
        if body in ("+", "-"):
            body += "1"
        return cls(re_part, Fraction(body))

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational(a * c, 0)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    # -- display --------------------------------------------------------
    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"GR({self})"


GR = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
