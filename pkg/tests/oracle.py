"""Independent brute-force cohomology dimensions.

Shares nothing with the engine beyond reading a model's structure equations:
forms are dicts keyed by ``(weight, symbols)`` with symbols ``(0, k)`` for
``phi^k`` and ``(1, k)`` for its conjugate, scalars are ``(Fraction, Fraction)``
pairs, differentials are re-derived from the Leibniz rule by walking words,
and ranks come from fraction-free (Bareiss) elimination pivoting column by
column.  The engine eliminates row-major over reduced echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

Z = (Fraction(0), Fraction(0))


def cadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def csub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def cdiv(x, y):
    den = y[0] * y[0] + y[1] * y[1]
    num = cmul(x, (y[0], -y[1]))
    return (num[0] / den, num[1] / den)


def cconj(x):
    return (x[0], -x[1])


def _coeff(c):
    return (Fraction(c.re), Fraction(c.im))


def _sort_word(word):
    """Sign and canonical order of a word of 1-form symbols (0 on repeats)."""
    if len(set(word)) != len(word):
        return 0, None
    w = list(word)
    sign = 1
    for i in range(len(w)):
        for j in range(len(w) - 1 - i):
            if w[j] > w[j + 1]:
                w[j], w[j + 1] = w[j + 1], w[j]
                sign = -sign
    return sign, tuple(w)


def _add_term(out, key, c):
    prev = out.get(key, Z)
    s = cadd(prev, c)
    if s == Z:
        out.pop(key, None)
    else:
        out[key] = s


class OracleModel:
    def __init__(self, model):
        self.n = model.n
        self.weights = [tuple(w) for w in model.window.weights()]
        # d of phi^k from the raw structure equations plus the generator characters
        self.dgen = {}
        for k, (dk, w) in enumerate(zip(model.differentials, model.generator_weights), start=1):
            form = {}
            for m, c in dk.items():
                word = tuple((0, i) for i in m.holo) + tuple((1, j) for j in m.anti)
                _add_term(form, word, _coeff(c))
            a, b = w
            if a and k != 1:
                _add_term(form, ((0, 1), (0, k)), (Fraction(a), Fraction(0)))
            if b:
                # b phibar^1 ^ phi^k  ==  -b phi^k ^ phibar^1
                _add_term(form, ((0, k), (1, 1)), (Fraction(-b), Fraction(0)))
            self.dgen[(0, k)] = form
        for k in range(1, self.n + 1):
            conj = {}
            for word, c in self.dgen[(0, k)].items():
                flipped = tuple((1 - t, i) for t, i in word)
                sign, canon = _sort_word(flipped)
                _add_term(conj, canon, cmul(cconj(c), (Fraction(sign), Fraction(0))))
            self.dgen[(1, k)] = conj

    def d_word(self, weight, word):
        """Total differential of ``e^weight * word``, split by type (1,0) / (0,1)."""
        out_del, out_dbar = {}, {}
        a, b = weight
        if a:
            sign, canon = _sort_word(((0, 1),) + word)
            if sign:
                _add_term(out_del, (weight, canon), (Fraction(a * sign), Fraction(0)))
        if b:
            sign, canon = _sort_word(((1, 1),) + word)
            if sign:
                _add_term(out_dbar, (weight, canon), (Fraction(b * sign), Fraction(0)))
        for pos, sym in enumerate(word):
            before, after = word[:pos], word[pos + 1 :]
            sgn = -1 if pos % 2 else 1
            for dword, c in self.dgen[sym].items():
                sign, canon = _sort_word(before + dword + after)
                if not sign:
                    continue
                holo = sum(1 for t, _ in dword if t == 0)
                # a 2-form with two holomorphic factors is the del part
                target = out_del if holo - (1 if sym[0] == 0 else 0) == 1 else out_dbar
                _add_term(target, (weight, canon), cmul(c, (Fraction(sgn * sign), Fraction(0))))
        return out_del, out_dbar

    def words(self, p, q, weight):
        if not (0 <= p <= self.n and 0 <= q <= self.n):
            return []
        out = []
        for I in combinations(range(1, self.n + 1), p):
            for J in combinations(range(1, self.n + 1), q):
                out.append((weight, tuple((0, i) for i in I) + tuple((1, j) for j in J)))
        return out

    def apply(self, op, key):
        weight, word = key
        dd, db = self.d_word(weight, word)
        if op == "del":
            return dd
        if op == "delbar":
            return db
        if op == "d":
            out = dict(dd)
            for k, c in db.items():
                _add_term(out, k, c)
            return out
        if op == "ddbar":
            out = {}
            for (w2, word2), c in db.items():
                inner, _ = self.d_word(w2, word2)
                for k, c2 in inner.items():
                    _add_term(out, k, cmul(c, c2))
            return out
        raise ValueError(op)


def bareiss_rank(columns, nrows):
    """Rank of the matrix given as a list of column dicts, pivoting column by column."""
    rows = sorted({r for col in columns for r in col})
    index = {r: i for i, r in enumerate(rows)}
    m = len(rows)
    M = [[Z] * len(columns) for _ in range(m)]
    for j, col in enumerate(columns):
        for r, c in col.items():
            M[index[r]][j] = c
    rank = 0
    prev = (Fraction(1), Fraction(0))
    ncols = len(columns)
    for j in range(ncols):
        piv = None
        for i in range(rank, m):
            if M[i][j] != Z:
                piv = i
                break
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        pv = M[rank][j]
        for i in range(rank + 1, m):
            lead = M[i][j]
            for jj in range(j, ncols):
                M[i][jj] = cdiv(csub(cmul(pv, M[i][jj]), cmul(lead, M[rank][jj])), prev)
        prev = pv
        rank += 1
        if rank == m:
            break
    return rank


def _rank(om, op, src):
    return bareiss_rank([om.apply(op, k) for k in src], None) if src else 0


def _stack_rank(om, ops, src):
    """Rank of the vertically stacked operators (keys tagged by operator)."""
    if not src:
        return 0
    cols = []
    for k in src:
        col = {}
        for tag, op in enumerate(ops):
            for key, c in om.apply(op, k).items():
                col[(tag, key)] = c
        cols.append(col)
    return bareiss_rank(cols, None)


def dimension(model, theory, p, q=None):
    """Brute-force dimension summed over the admissible weights."""
    om = OracleModel(model)
    total = 0
    for w in om.weights:
        if theory == "deRham":
            k = p
            B0 = [x for a in range(k + 1) for x in om.words(a, k - a, w)]
            Bm = [x for a in range(k) for x in om.words(a, k - 1 - a, w)]
            total += len(B0) - _rank(om, "d", B0) - _rank(om, "d", Bm)
            continue
        B0 = om.words(p, q, w)
        N = len(B0)
        if theory == "dolbeault":
            total += N - _rank(om, "delbar", B0) - _rank(om, "delbar", om.words(p, q - 1, w))
        elif theory == "partial":
            total += N - _rank(om, "del", B0) - _rank(om, "del", om.words(p - 1, q, w))
        elif theory == "bottChern":
            total += N - _stack_rank(om, ("del", "delbar"), B0) - _rank(om, "ddbar", om.words(p - 1, q - 1, w))
        elif theory == "aeppli":
            imgs = [om.apply("del", k) for k in om.words(p - 1, q, w)]
            imgs += [om.apply("delbar", k) for k in om.words(p, q - 1, w)]
            total += N - _rank(om, "ddbar", B0) - (bareiss_rank(imgs, None) if imgs else 0)
        else:
            raise ValueError(theory)
    return total
