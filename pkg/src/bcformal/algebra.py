"""Exterior algebra of weighted (p,q)-monomials and the bi-differential of a model.

A monomial is ``e^{a z1 + b zbar1} phi^I ^ phibar^J`` with ``I``, ``J`` strictly
increasing tuples of 1-based generator indices.  The character ``e^{...}`` is
carried as a :class:`Weight`; the first generator ``phi^1`` plays the role of
``dz1``, so the character contributes ``a phi^1 ^ .`` to del and
``b phibar^1 ^ .`` to delbar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import InhomogeneousForm, WeightOverflow
from .gaussian import GaussianRational, ONE, ZERO
from .metric import HermitianMetric

__all__ = [
    "Weight",
    "Monomial",
    "Form",
    "WeightWindow",
    "Model",
    "Violation",
    "ValidationReport",
    "wedge",
    "del_",
    "delbar",
    "d",
    "conjugate",
    "basis",
    "sector_basis",
    "validate",
]


class Weight(NamedTuple):
    """Exponents ``(a, b)`` of the character ``e^{a z1 + b zbar1}``."""

    a: int = 0
    b: int = 0

    def __add__(self, other):
        return Weight(self.a + other[0], self.b + other[1])

    def conjugate(self) -> Weight:
        return Weight(self.b, self.a)

    def __str__(self):
        return f"({self.a},{self.b})"


ZERO_WEIGHT = Weight(0, 0)


class Monomial(NamedTuple):
    weight: Weight
    holo: tuple[int, ...]
    anti: tuple[int, ...]

    @property
    def bidegree(self) -> tuple[int, int]:
        return (len(self.holo), len(self.anti))

    @property
    def degree(self) -> int:
        return len(self.holo) + len(self.anti)

    def sort_key(self):
        return (self.weight, self.holo, self.anti)

    def word(self) -> str:
        parts = [f"phi{i}" for i in self.holo] + [f"phi{j}~" for j in self.anti]
        body = "^".join(parts) if parts else "1"
        if self.weight != ZERO_WEIGHT:
            return f"e({self.weight.a},{self.weight.b})*{body}"
        return body


def _merge(left: tuple[int, ...], right: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign and sorted union of two index sets; sign 0 when they overlap."""
    if not left:
        return 1, right
    if not right:
        return 1, left
    if set(left) & set(right):
        return 0, ()
    inversions = 0
    for x in left:
        for y in right:
            if x > y:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(left + right))


def monomial_product(m1: Monomial, m2: Monomial) -> tuple[int, Monomial | None]:
    s1, holo = _merge(m1.holo, m2.holo)
    if not s1:
        return 0, None
    s2, anti = _merge(m1.anti, m2.anti)
    if not s2:
        return 0, None
    sign = s1 * s2
    # moving phi^{I2} past phibar^{J1}
    if (len(m1.anti) * len(m2.holo)) & 1:
        sign = -sign
    return sign, Monomial(m1.weight + m2.weight, holo, anti)


def _canonical_monomial(weight, holo, anti) -> tuple[int, Monomial | None]:
    """Normalize possibly unsorted index lists; returns (sign, monomial)."""
    sign = 1
    for seq in (holo, anti):
        if len(set(seq)) != len(seq):
            return 0, None
        inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
        if inv & 1:
            sign = -sign
    return sign, Monomial(Weight(*weight), tuple(sorted(holo)), tuple(sorted(anti)))


class Form:
    """Finite Q(i)-combination of monomials. Immutable; zero coefficients never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, GaussianRational] = {}
        for m, c in items:
            c = GaussianRational.coerce(c)
            if not isinstance(m, Monomial):
                m = Monomial(Weight(*m[0]), tuple(m[1]), tuple(m[2]))
            prev = clean.get(m)
            c = c if prev is None else prev + c
            if c:
                clean[m] = c
            elif prev is not None:
                del clean[m]
        self._terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict) -> Form:
        f = cls.__new__(cls)
        f._terms = terms
        f._hash = None
        return f

    @classmethod
    def zero(cls) -> Form:
        return cls._raw({})

    @classmethod
    def one(cls, weight=ZERO_WEIGHT) -> Form:
        return cls._raw({Monomial(Weight(*weight), (), ()): ONE})

    @classmethod
    def monomial(cls, holo=(), anti=(), coeff=1, weight=ZERO_WEIGHT) -> Form:
        """Monomial from possibly unsorted index lists (sign applied)."""
        sign, m = _canonical_monomial(weight, tuple(holo), tuple(anti))
        if not sign:
            return cls.zero()
        return cls({m: GaussianRational.coerce(coeff) * sign})

    @classmethod
    def generator(cls, k: int) -> Form:
        return cls.monomial((k,), ())

    @classmethod
    def conj_generator(cls, k: int) -> Form:
        return cls.monomial((), (k,))

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, GaussianRational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, key=Monomial.sort_key)

    def coefficient(self, m: Monomial) -> GaussianRational:
        return self._terms.get(m, ZERO)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {m.bidegree for m in self._terms}

    def weights(self) -> set[Weight]:
        return {m.weight for m in self._terms}

    @property
    def bidegree(self) -> tuple[int, int] | None:
        """The common bidegree; ``None`` for the zero form."""
        degs = self.bidegrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise InhomogeneousForm(f"form has several bidegrees {sorted(degs)}")
        return next(iter(degs))

    @property
    def degree(self) -> int | None:
        degs = {p + q for p, q in self.bidegrees()}
        if not degs:
            return None
        if len(degs) > 1:
            raise InhomogeneousForm(f"form has several total degrees {sorted(degs)}")
        return next(iter(degs))

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def component(self, p: int | None = None, q: int | None = None, weight=None) -> Form:
        out = {}
        for m, c in self._terms.items():
            if p is not None and len(m.holo) != p:
                continue
            if q is not None and len(m.anti) != q:
                continue
            if weight is not None and m.weight != tuple(weight):
                continue
            out[m] = c
        return Form._raw(out)

    def with_weight_shift(self, w) -> Form:
        if tuple(w) == ZERO_WEIGHT:
            return self
        return Form._raw({m._replace(weight=m.weight + w): c for m, c in self._terms.items()})

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                s = prev + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Form._raw(out)

    def __neg__(self):
        return Form._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> Form:
        c = GaussianRational.coerce(c)
        if not c:
            return Form.zero()
        if c == ONE:
            return self
        return Form._raw({m: c * v for m, v in self._terms.items()})

    def __mul__(self, c):
        if isinstance(c, Form):
            return NotImplemented
        try:
            return self.scale(c)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __xor__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return wedge(self, other)

    # -- equality / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Form):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __iter__(self) -> Iterator[tuple[Monomial, GaussianRational]]:
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0].sort_key()))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self:
            word = m.word()
            if c == ONE:
                term, neg = word, False
            elif c == -ONE:
                term, neg = word, True
            elif c.is_real():
                neg = c.re < 0
                mag = -c.re if neg else c.re
                term = f"{mag}*{word}"
            elif not c.re:
                neg = c.im < 0
                mag = -c.im if neg else c.im
                term = f"{'' if mag == 1 else mag}i*{word}"
            else:
                term, neg = f"({c})*{word}", False
            if not pieces:
                pieces.append(("-" if neg else "") + term)
            else:
                pieces.append(("- " if neg else "+ ") + term)
        return " ".join(pieces)

    def __repr__(self):
        return f"Form({self})"


def wedge(f: Form, g: Form, model: Model | None = None) -> Form:
    """Exterior product; with ``model`` given, weights outside its window raise."""
    if not f._terms or not g._terms:
        return Form.zero()
    out: dict[Monomial, GaussianRational] = {}
    for m1, c1 in f._terms.items():
        for m2, c2 in g._terms.items():
            sign, m = monomial_product(m1, m2)
            if not sign:
                continue
            c = c1 * c2
            if sign < 0:
                c = -c
            prev = out.get(m)
            if prev is not None:
                c = prev + c
                if not c:
                    del out[m]
                    continue
            out[m] = c
    result = Form._raw(out)
    if model is not None:
        model.check_window(result)
    return result


def conjugate(f: Form) -> Form:
    """Complex conjugation: swaps holomorphic/antiholomorphic indices with sign ``(-1)^{pq}``."""
    out = {}
    for m, c in f._terms.items():
        p, q = m.bidegree
        c = c.conjugate()
        if (p * q) & 1:
            c = -c
        out[Monomial(m.weight.conjugate(), m.anti, m.holo)] = c
    return Form._raw(out)


@dataclass(frozen=True)
class WeightWindow:
    """Inclusive rectangle of admissible character weights.

    Only unitary characters (``a + b == 0``) are admissible: they are the ones
    that descend to functions on a compact quotient, and they keep the weighted
    inner product compatible with the metric adjoints.
    """

    a_min: int = 0
    a_max: int = 0
    b_min: int = 0
    b_max: int = 0

    def __contains__(self, w) -> bool:
        a, b = w
        return self.a_min <= a <= self.a_max and self.b_min <= b <= self.b_max and a + b == 0

    def weights(self) -> list[Weight]:
        return [
            Weight(a, b)
            for a in range(self.a_min, self.a_max + 1)
            for b in range(self.b_min, self.b_max + 1)
            if a + b == 0
        ]

    def is_trivial(self) -> bool:
        return self.weights() == [ZERO_WEIGHT]

    def __str__(self):
        return f"[{self.a_min}..{self.a_max}]x[{self.b_min}..{self.b_max}]"


@dataclass(frozen=True)
class Model:
    """A bi-differential bigraded algebra given by structure equations.

    ``differentials[k-1]`` is ``d phi^k`` (a weight-0 form of total degree 2).
    ``generator_weights[k-1] = (a, b)`` declares ``phi^k = e^{a z1 + b zbar1} theta^k``
    with ``theta^k`` closed; the resulting ``a phi^1^phi^k + b phibar^1^phi^k`` is
    added to ``d phi^k``.
    """

    name: str
    n: int
    differentials: tuple[Form, ...] = ()
    generator_weights: tuple[Weight, ...] = ()
    window: WeightWindow = WeightWindow()
    metric: HermitianMetric | None = None
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        diffs = tuple(self.differentials) or tuple(Form.zero() for _ in range(self.n))
        if len(diffs) != self.n:
            raise ValueError(f"expected {self.n} generator differentials, got {len(diffs)}")
        weights = tuple(Weight(*w) for w in self.generator_weights) or tuple(
            ZERO_WEIGHT for _ in range(self.n)
        )
        if len(weights) != self.n:
            raise ValueError(f"expected {self.n} generator weights, got {len(weights)}")
        object.__setattr__(self, "differentials", diffs)
        object.__setattr__(self, "generator_weights", weights)
        if self.metric is None:
            object.__setattr__(self, "metric", HermitianMetric.identity(self.n))

    # -- structure ------------------------------------------------------
    def weights(self) -> list[Weight]:
        return self.window.weights()

    def check_window(self, f: Form) -> None:
        for w in f.weights():
            if w not in self.window:
                raise WeightOverflow(w, self.window)

    @cached_property
    def total_differentials(self) -> tuple[Form, ...]:
        """``d phi^k`` including the contribution of declared generator weights."""
        out = []
        for k, (dk, w) in enumerate(zip(self.differentials, self.generator_weights), start=1):
            extra = Form.zero()
            if w.a and k != 1:
                extra = extra + Form.monomial((1, k), (), w.a)
            if w.b:
                extra = extra + Form.monomial((k,), (1,), -w.b)
            out.append(dk + extra)
        return tuple(out)

    @cached_property
    def _generator_images(self):
        """(del, delbar) of every holomorphic and conjugate generator."""
        holo_del, holo_delbar, anti_del, anti_delbar = {}, {}, {}, {}
        for k, dk in enumerate(self.total_differentials, start=1):
            holo_del[k] = dk.component(2, 0)
            holo_delbar[k] = dk.component(1, 1)
            anti_del[k] = conjugate(holo_delbar[k])
            anti_delbar[k] = conjugate(holo_del[k])
        return holo_del, holo_delbar, anti_del, anti_delbar

    def _derive(self, m: Monomial, which: int) -> Form:
        """Apply del (which=0) or delbar (which=1) to one monomial."""
        key = (which, m)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        holo_del, holo_delbar, anti_del, anti_delbar = self._generator_images
        hmap = holo_del if which == 0 else holo_delbar
        amap = anti_del if which == 0 else anti_delbar
        w = m.weight
        result = Form.zero()
        char = w.a if which == 0 else w.b
        if char:
            lead = Form.generator(1) if which == 0 else Form.conj_generator(1)
            result = result + wedge(lead, Form._raw({m: ONE})).scale(char)
        factors = [("h", i) for i in m.holo] + [("a", j) for j in m.anti]
        for pos, (kind, idx) in enumerate(factors):
            image = hmap[idx] if kind == "h" else amap[idx]
            if not image:
                continue
            left = factors[:pos]
            right = factors[pos + 1 :]
            lf = Form.monomial([i for t, i in left if t == "h"], [j for t, j in left if t == "a"])
            rf = Form.monomial([i for t, i in right if t == "h"], [j for t, j in right if t == "a"])
            term = wedge(wedge(lf, image.with_weight_shift(w)), rf)
            if pos & 1:
                term = -term
            result = result + term
        self._cache[key] = result
        return result

    def del_(self, f: Form) -> Form:
        out = Form.zero()
        for m, c in f.items():
            out = out + self._derive(m, 0).scale(c)
        return out

    def delbar(self, f: Form) -> Form:
        out = Form.zero()
        for m, c in f.items():
            out = out + self._derive(m, 1).scale(c)
        return out

    def d(self, f: Form) -> Form:
        return self.del_(f) + self.delbar(f)

    def wedge(self, f: Form, g: Form) -> Form:
        return wedge(f, g, self)

    def generator_name(self, k: int) -> str:
        return f"phi{k}"

    def __repr__(self):
        return f"Model({self.name!r}, n={self.n})"


def del_(model: Model, f: Form) -> Form:
    return model.del_(f)


def delbar(model: Model, f: Form) -> Form:
    return model.delbar(f)


def d(model: Model, f: Form) -> Form:
    return model.d(f)


def basis(model_or_n, p: int, q: int, weight=ZERO_WEIGHT) -> list[Monomial]:
    """Lexicographic list of the C(n,p)*C(n,q) monomials of bidegree (p,q) at one weight."""
    n = model_or_n.n if isinstance(model_or_n, Model) else int(model_or_n)
    if isinstance(model_or_n, Model) and tuple(weight) not in model_or_n.window:
        raise WeightOverflow(weight, model_or_n.window)
    w = Weight(*weight)
    if not (0 <= p <= n and 0 <= q <= n):
        return []
    return [
        Monomial(w, holo, anti)
        for holo in combinations(range(1, n + 1), p)
        for anti in combinations(range(1, n + 1), q)
    ]


def sector_basis(model: Model, p: int, q: int, weights=None) -> list[Monomial]:
    """Basis of bidegree (p,q) over all admissible weights (weight-major order)."""
    ws = model.weights() if weights is None else [Weight(*w) for w in weights]
    out = []
    for w in ws:
        out.extend(basis(model, p, q, w))
    return out


@dataclass(frozen=True)
class Violation:
    kind: str
    generator: str
    residual: Form

    def __str__(self):
        return f"{self.kind} at {self.generator}: residual {self.residual}"


@dataclass(frozen=True)
class ValidationReport:
    model: str
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return f"{self.model}: valid"
        lines = [f"{self.model}: {len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


def validate(model: Model) -> ValidationReport:
    """Check integrability, d^2 = 0 and the metric; never raises on a bad model."""
    bad: list[Violation] = []
    n = model.n
    for k, dk in enumerate(model.total_differentials, start=1):
        name = f"phi{k}"
        for m in dk.monomials():
            if m.degree != 2 or m.weight != ZERO_WEIGHT or any(i > n for i in m.holo + m.anti):
                bad.append(Violation("malformed differential", name, dk))
                break
        residual = dk.component(0, 2)
        if residual:
            bad.append(Violation("integrability", name, residual))
    if bad:
        return ValidationReport(model.name, tuple(bad))
    if ZERO_WEIGHT not in model.window:
        bad.append(Violation("window", "-", Form.zero()))
    charged = not model.window.is_trivial() or any(w != ZERO_WEIGHT for w in model.generator_weights)
    if charged and n >= 1:
        d1 = model.total_differentials[0]
        if d1:
            bad.append(Violation("character generator phi1 not closed", "phi1", d1))
    probes = [(f"phi{k}", Form.generator(k)) for k in range(1, n + 1)]
    probes += [(f"phi{k}~", Form.conj_generator(k)) for k in range(1, n + 1)]
    probes += [(f"e{w}", Form.one(w)) for w in model.weights() if w != ZERO_WEIGHT]
    for name, x in probes:
        dx, dbx = model.del_(x), model.delbar(x)
        r = model.del_(dx)
        if r:
            bad.append(Violation("del^2 != 0", name, r))
        r = model.delbar(dbx)
        if r:
            bad.append(Violation("delbar^2 != 0", name, r))
        r = model.del_(dbx) + model.delbar(dx)
        if r:
            bad.append(Violation("del delbar + delbar del != 0", name, r))
    for msg in model.metric.problems():
        bad.append(Violation(f"metric: {msg}", "-", Form.zero()))
    return ValidationReport(model.name, tuple(bad))
