"""Text format for models and forms.

A model document is line oriented; ``#`` starts a comment::

    model iwasawa
    dim 3
    d phi3 = -phi1^phi2

Optional lines: ``generators NAME...`` (default ``phi1 .. phin``),
``weight NAME = a,b``, ``window a A_MIN..A_MAX b B_MIN..B_MAX`` and
``gram I J = COEFF`` (1-based, upper entries mirrored by conjugation, the
diagonal defaults to 1).

Forms are sums of terms ``[sign] [coeff [*]] word`` where ``word`` joins
factors ``NAME``, ``NAME~`` (conjugate), ``e(a,b)`` (character) or ``1``
with ``^``.  Coefficients follow the Gaussian-rational grammar and must be
parenthesized when they contain an inner sign, e.g. ``(1/2-3i)*phi1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import Form, Model, Weight, WeightWindow, validate, wedge
from .errors import ModelValidationError, ParseError
from .gaussian import GaussianRational, ONE
from .metric import HermitianMetric

__all__ = ["parse_form", "format_form", "parse_model", "emit_model", "default_names"]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"\d+(?:/\d+)?")
_RESERVED = {"e", "i"}


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"phi{k}" for k in range(1, n + 1))


class _Scanner:
    def __init__(self, text: str, line: int, col0: int):
        self.text = text
        self.pos = 0
        self.line = line
        self.col0 = col0

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.line, self.col0 + self.pos + 1)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str) -> None:
        if not self.eat(ch):
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")

    def match(self, pattern: re.Pattern) -> str | None:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group(0)

    def at_end(self) -> bool:
        return self.peek() == ""


def _int(sc: _Scanner) -> int:
    neg = sc.eat("-")
    tok = sc.match(re.compile(r"\d+"))
    if tok is None:
        raise sc.error("expected an integer")
    return -int(tok) if neg else int(tok)


def _coefficient(sc: _Scanner) -> GaussianRational | None:
    """Leading coefficient of a term, or ``None`` when the term starts with a word."""
    ch = sc.peek()
    if ch == "(":
        start = sc.pos
        sc.pos += 1
        close = sc.text.find(")", sc.pos)
        if close < 0:
            raise sc.error("unclosed '('")
        body = sc.text[sc.pos : close]
        try:
            value = GaussianRational.parse(body)
        except ValueError:
            sc.pos = start
            raise sc.error(f"malformed coefficient {body!r}") from None
        sc.pos = close + 1
        return value
    if ch.isdigit():
        tok = sc.match(_NUMBER)
        if sc.text.startswith("i", sc.pos) and not _NAME.match(sc.text, sc.pos + 1):
            sc.pos += 1
            return GaussianRational.parse(tok + "i")
        return GaussianRational.parse(tok)
    if ch == "i":
        nxt = sc.text[sc.pos + 1 : sc.pos + 2]
        if not (nxt.isalnum() or nxt == "_"):
            sc.pos += 1
            return GaussianRational(0, 1)
    return None


def _factor(sc: _Scanner, names: dict[str, int]) -> Form:
    if sc.peek() == "1" and not re.match(r"[0-9/]", sc.text[sc.pos + 1 : sc.pos + 2]):
        sc.pos += 1
        return Form.one()
    save = sc.pos
    name = sc.match(_NAME)
    if name is None:
        raise sc.error("expected a generator name")
    if name == "e" and sc.peek() == "(":
        sc.expect("(")
        a = _int(sc)
        sc.expect(",")
        b = _int(sc)
        sc.expect(")")
        return Form.one(Weight(a, b))
    k = names.get(name)
    if k is None:
        sc.pos = save
        raise sc.error(f"unknown generator {name!r}")
    if sc.text.startswith("~", sc.pos):
        sc.pos += 1
        return Form.conj_generator(k)
    return Form.generator(k)


def _word(sc: _Scanner, names: dict[str, int]) -> Form:
    out = _factor(sc, names)
    while sc.peek() in ("^", "*"):
        sc.pos += 1
        out = wedge(out, _factor(sc, names))
    return out


def _term(sc: _Scanner, names: dict[str, int]) -> Form:
    coeff = _coefficient(sc)
    if coeff is not None:
        if sc.eat("*"):
            return _word(sc, names).scale(coeff)
        if sc.peek() and sc.peek() not in "+-":
            return _word(sc, names).scale(coeff)
        return Form.one().scale(coeff)
    return _word(sc, names)


def _form(sc: _Scanner, names: dict[str, int]) -> Form:
    total = Form.zero()
    first = True
    while True:
        neg = False
        if sc.eat("-"):
            neg = True
        elif not sc.eat("+") and not first:
            break
        if sc.at_end():
            raise sc.error("expected a term")
        t = _term(sc, names)
        total = total - t if neg else total + t
        first = False
        if sc.at_end():
            break
        if sc.peek() not in "+-":
            raise sc.error(f"unexpected {sc.peek()!r}")
    return total


def parse_form(text: str, names=None, n: int | None = None, line: int = 1, column: int = 0) -> Form:
    """Parse a form; ``names`` maps generator names to indices (default ``phiK``)."""
    if names is None:
        if n is None:
            names = {f"phi{k}": k for k in range(1, 100)}
        else:
            names = {nm: k for k, nm in enumerate(default_names(n), start=1)}
    elif not isinstance(names, dict):
        names = {nm: k for k, nm in enumerate(names, start=1)}
    sc = _Scanner(text, line, column)
    if sc.at_end():
        raise sc.error("empty form")
    if sc.peek() == "0" and sc.text.strip() == "0":
        return Form.zero()
    return _form(sc, names)


def _coeff_text(c: GaussianRational) -> str:
    return str(c)


def format_form(f: Form, names=None) -> str:
    """Inverse of :func:`parse_form` (default names print as ``Form.__str__``)."""
    if names is None:
        return str(f)
    text = str(f)
    # rename longest indices first so phi12 is not hit by phi1
    for k in sorted(range(1, len(names) + 1), reverse=True):
        text = re.sub(rf"\bphi{k}(?![0-9])", f"\x00{k}\x00", text)
    for k, nm in enumerate(names, start=1):
        text = text.replace(f"\x00{k}\x00", nm)
    return text


# -- model documents -----------------------------------------------------------

@dataclass
class _Draft:
    name: str | None = None
    n: int | None = None
    names: tuple[str, ...] | None = None
    weights: dict | None = None
    window: WeightWindow = WeightWindow()
    diffs: dict | None = None
    gram: dict | None = None


def _split_eq(body: str, line: int, col0: int) -> tuple[str, str, int]:
    pos = body.find("=")
    if pos < 0:
        raise ParseError("expected '='", line, col0 + len(body) + 1)
    return body[:pos].strip(), body[pos + 1 :], col0 + pos + 1


def parse_model(text: str, check: bool = True) -> Model:
    """Parse a model document; with ``check`` the model is validated and rejected if invalid."""
    draft = _Draft(weights={}, diffs={}, gram={})
    pending: list[tuple[int, int, str, str]] = []  # deferred until names are known
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        indent = len(stripped) - len(stripped.lstrip())
        body = stripped.strip()
        key, _, rest = body.partition(" ")
        rest_col = indent + len(key) + 1
        rest = rest.strip() if rest else ""
        if key == "model":
            if not _NAME.fullmatch(rest.replace("-", "_")):
                raise ParseError("model name must be an identifier", lineno, rest_col + 1)
            draft.name = rest
        elif key == "dim":
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError("dim must be a positive integer", lineno, rest_col + 1)
            draft.n = int(rest)
        elif key == "generators":
            names = tuple(rest.split())
            for nm in names:
                if not _NAME.fullmatch(nm) or nm in _RESERVED:
                    raise ParseError(f"invalid generator name {nm!r}", lineno, rest_col + 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate generator name", lineno, rest_col + 1)
            draft.names = names
        elif key in ("d", "weight"):
            pending.append((lineno, indent, key, body))
        elif key == "window":
            m = re.fullmatch(r"a\s*(-?\d+)\s*\.\.\s*(-?\d+)\s+b\s*(-?\d+)\s*\.\.\s*(-?\d+)", rest)
            if not m:
                raise ParseError("expected 'window a MIN..MAX b MIN..MAX'", lineno, rest_col + 1)
            draft.window = WeightWindow(*(int(x) for x in m.groups()))
        elif key == "gram":
            lhs, rhs, col = _split_eq(rest, lineno, rest_col)
            idx = lhs.split()
            if len(idx) != 2 or not all(x.isdigit() for x in idx):
                raise ParseError("expected 'gram I J = COEFF'", lineno, rest_col + 1)
            try:
                value = GaussianRational.parse(rhs.strip().strip("()"))
            except ValueError:
                raise ParseError(f"malformed coefficient {rhs.strip()!r}", lineno, col + 2) from None
            draft.gram[(int(idx[0]), int(idx[1]))] = value
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, indent + 1)
    if draft.name is None:
        raise ParseError("missing 'model NAME' line", 1, 1)
    if draft.n is None:
        raise ParseError("missing 'dim N' line", 1, 1)
    n = draft.n
    names = draft.names or default_names(n)
    if len(names) != n:
        raise ParseError(f"expected {n} generator names, got {len(names)}", 1, 1)
    index = {nm: k for k, nm in enumerate(names, start=1)}
    for lineno, indent, key, body in pending:
        rest = body[len(key) :]
        col0 = indent + len(key)
        lhs, rhs, col = _split_eq(rest, lineno, col0)
        target = lhs.strip()
        k = index.get(target)
        if k is None:
            raise ParseError(f"unknown generator {target!r}", lineno, col0 + 2)
        if key == "d":
            if k in draft.diffs:
                raise ParseError(f"differential of {target} given twice", lineno, indent + 1)
            draft.diffs[k] = parse_form(rhs, index, line=lineno, column=col)
        else:
            m = re.fullmatch(r"\s*(-?\d+)\s*,\s*(-?\d+)\s*", rhs)
            if not m:
                raise ParseError("expected 'weight NAME = a,b'", lineno, col + 1)
            draft.weights[k] = Weight(int(m.group(1)), int(m.group(2)))
    for i, j in draft.gram:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"gram index ({i},{j}) out of range", 1, 1)
    diffs = tuple(draft.diffs.get(k, Form.zero()) for k in range(1, n + 1))
    weights = tuple(draft.weights.get(k, Weight(0, 0)) for k in range(1, n + 1))
    metric = None
    if draft.gram:
        G = [[ONE if i == j else GaussianRational(0) for j in range(n)] for i in range(n)]
        for (i, j), v in draft.gram.items():
            G[i - 1][j - 1] = v
            if (j, i) not in draft.gram:
                G[j - 1][i - 1] = v.conjugate()
        metric = HermitianMetric(n, G)
    model = Model(draft.name, n, diffs, weights, draft.window, metric)
    if names != default_names(n):
        model._cache["names"] = names
    if check:
        report = validate(model)
        if not report.valid:
            raise ModelValidationError(report)
    return model


def emit_model(model: Model, names=None) -> str:
    """Document text that parses back to ``model``."""
    names = tuple(names or model._cache.get("names") or default_names(model.n))
    out = [f"model {model.name}", f"dim {model.n}"]
    if names != default_names(model.n):
        out.append("generators " + " ".join(names))
    for k, w in enumerate(model.generator_weights, start=1):
        if w != Weight(0, 0):
            out.append(f"weight {names[k - 1]} = {w.a},{w.b}")
    win = model.window
    if win != WeightWindow():
        out.append(f"window a {win.a_min}..{win.a_max} b {win.b_min}..{win.b_max}")
    for k, dk in enumerate(model.differentials, start=1):
        if dk:
            out.append(f"d {names[k - 1]} = {format_form(dk, names)}")
    if not model.metric.is_identity():
        G = model.metric.gram
        for i in range(model.n):
            for j in range(i, model.n):
                v = G[i][j]
                if (i == j and v != ONE) or (i != j and v):
                    out.append(f"gram {i + 1} {j + 1} = {_coeff_text(v)}")
    return "\n".join(out) + "\n"
