"""Command-line driver: ``bcformal <command> <model> [options]``.

Exit codes: 0 success, 1 parse/validation/usage error, 2 undefined Massey
product, 3 budget exceeded or weight-window overflow.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from . import catalog
from .algebra import Form, Model, validate
from .cohomology import (
    compute,
    betti_numbers,
    ddbar_lemma,
    delta_k,
    dimension_table,
    normalize_theory,
)
from .document import emit_model, format_form, parse_form, parse_model
from .errors import (
    BCFormalError,
    BudgetExceeded,
    InvalidTheoryDegree,
    ModelValidationError,
    NotACocycle,
    ParseError,
    ProductNotExact,
    UnknownModel,
    WeightOverflow,
)
from .formality import is_geometrically_formal, massey_abc, obstruction_report
from .hodge import harmonic_space

__all__ = ["main", "run", "render_triangle"]

FORMAT_ENV = "BCFORMAL_FORMAT"

THEORY_CHOICES = ("bc", "bottchern", "aeppli", "a", "dolbeault", "partial", "derham")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _names(model: Model):
    return model._cache.get("names")


def _fmt(model: Model, f: Form) -> str:
    return format_form(f, _names(model))


# -- rendering --------------------------------------------------------------------

def render_triangle(table: dict[tuple[int, int], int], n: int, label: str = "h") -> str:
    """Diamond of ``h^{p,q}`` with row ``k`` holding ``p + q = k``, ``p`` decreasing to the right."""
    rows = []
    for k in range(2 * n + 1):
        cells = [f"{label}^{{{p},{k - p}}}={table[(p, k - p)]}" for p in range(min(k, n), max(0, k - n) - 1, -1)]
        rows.append(cells)
    width = max(len(c) for r in rows for c in r) + 2
    out = []
    for cells in rows:
        pad = (n + 1 - len(cells)) * width // 2
        out.append(" " * pad + "".join(c.center(width) for c in cells).rstrip())
    return "\n".join(out)


def _table_json(table: dict[tuple[int, int], int]) -> list[dict[str, int]]:
    return [{"p": p, "q": q, "dim": v} for (p, q), v in sorted(table.items())]


# -- commands ------------------------------------------------------------------------

def _cmd_list(args, model) -> tuple[dict, str]:
    entries = catalog.all_entries()
    data = {
        "models": [
            {"name": e.name, "n": e.model.n, "window": str(e.model.window), "notes": e.notes} for e in entries
        ]
    }
    text = "\n".join(f"{e.name:<24} n={e.model.n}  {e.notes}" for e in entries)
    return data, text


def _cmd_validate(args, model) -> tuple[dict, str]:
    report = validate(model)
    data = {
        "model": model.name,
        "valid": report.valid,
        "violations": [{"kind": v.kind, "generator": v.generator, "residual": _fmt(model, v.residual)} for v in report.violations],
        "document": emit_model(model),
    }
    return data, str(report)


def _theory(name: str) -> str:
    return normalize_theory(name)


def _bidegree(text: str | None):
    if text is None:
        return None
    try:
        parts = [int(x) for x in text.replace(" ", "").split(",")]
    except ValueError:
        raise UsageError(f"malformed bidegree {text!r}") from None
    return parts


def _cmd_cohomology(args, model) -> tuple[dict, str]:
    theory = _theory(args.theory)
    deg = _bidegree(args.bidegree)
    if deg is not None:
        if theory == "deRham":
            if len(deg) != 1:
                raise UsageError("de Rham takes a single total degree")
            group = compute(model, theory, deg[0])
        else:
            if len(deg) != 2:
                raise UsageError("expected --bidegree p,q")
            group = compute(model, theory, deg[0], deg[1])
        reps = [_fmt(model, f) for f in group.representatives]
        data = {
            "model": model.name,
            "theory": theory,
            "bidegree": list(group.bidegree) if group.bidegree else None,
            "degree": group.degree,
            "dimension": group.dimension,
            "representatives": reps,
        }
        text = f"{group.label()} of {model.name}: dimension {group.dimension}\n" + "\n".join(
            f"  [{r}]" for r in reps
        )
        return data, text.rstrip()
    if theory == "deRham":
        b = betti_numbers(model)
        data = {"model": model.name, "theory": theory, "betti": b}
        return data, f"de Rham Betti numbers of {model.name}: " + " ".join(map(str, b))
    table = dimension_table(model, theory)
    data = {"model": model.name, "theory": theory, "dimensions": _table_json(table)}
    text = f"{theory} numbers of {model.name}\n" + render_triangle(table, model.n)
    return data, text


def _cmd_harmonic(args, model) -> tuple[dict, str]:
    theory = _theory(args.theory)
    if theory not in ("dolbeault", "partial", "bottChern", "aeppli"):
        raise UsageError("harmonic spaces exist for dolbeault, partial, bc and aeppli")
    deg = _bidegree(args.bidegree)
    cells = []
    if deg is not None:
        if len(deg) != 2:
            raise UsageError("expected --bidegree p,q")
        if not all(0 <= x <= model.n for x in deg):
            raise InvalidTheoryDegree(f"bidegree {tuple(deg)} out of range")
        targets = [tuple(deg)]
    else:
        targets = [(p, q) for p in range(model.n + 1) for q in range(model.n + 1)]
    lines = [f"{theory}-harmonic forms of {model.name}"]
    for p, q in targets:
        hs = harmonic_space(model, theory, p, q)
        forms = [_fmt(model, f) for f in hs.basis]
        cells.append({"p": p, "q": q, "dim": hs.dimension, "basis": forms})
        if forms:
            lines.append(f"({p},{q}) dim {hs.dimension}: " + "; ".join(forms))
    return {"model": model.name, "theory": theory, "sectors": cells}, "\n".join(lines)


def _cmd_formality(args, model) -> tuple[dict, str]:
    theory = _theory(args.theory)
    v = is_geometrically_formal(model, theory)
    witness = [_fmt(model, f) for f in v.witness] if v.witness else None
    data = {
        "model": model.name,
        "theory": theory,
        "formal": v.formal,
        "witness": witness,
        "product": _fmt(model, v.product) if v.product is not None else None,
        "pairs_checked": v.pairs_checked,
    }
    if v.formal:
        text = f"FORMAL: the {theory}-harmonic forms of {model.name} are closed under wedge ({v.pairs_checked} pairs)"
    else:
        text = (
            f"NOT FORMAL ({theory}) on {model.name}\n"
            f"  witness: ({witness[0]}) ^ ({witness[1]})\n"
            f"  product: {data['product']} is not harmonic"
        )
    return data, text


def _massey_json(model: Model, r) -> dict[str, Any]:
    return {
        "model": model.name,
        "inputs": [_fmt(model, f) for f in (r.input.a12, r.input.a23, r.input.a34)],
        "bidegrees": [list(b) for b in r.bidegrees],
        "a13": _fmt(model, r.a13),
        "a24": _fmt(model, r.a24),
        "representative": _fmt(model, r.representative),
        "target_bidegree": list(r.target_bidegree),
        "aeppli_dimension": r.target.dimension if r.target is not None else 0,
        "coordinates": [str(c) for c in r.coordinates],
        "indeterminacy_dimension": r.indeterminacy.dim,
        "vanishes": r.vanishes,
    }


def _cmd_massey(args, model) -> tuple[dict, str]:
    names = _names(model) or None
    forms = [parse_form(t, names, n=model.n) for t in (args.a, args.b, args.c)]
    r = massey_abc(model, forms)
    data = _massey_json(model, r)
    verdict = "VANISHING" if r.vanishes else "NON-VANISHING"
    P, Q = r.target_bidegree
    text = "\n".join(
        [
            f"{verdict} triple ABC-Massey product on {model.name}",
            f"  a13 = {data['a13']}",
            f"  a24 = {data['a24']}",
            f"  representative = {data['representative']}",
            f"  in H_A^{{{P},{Q}}} (dim {data['aeppli_dimension']}) modulo indeterminacy of dim {r.indeterminacy.dim}",
        ]
    )
    return data, text


def _cmd_obstructions(args, model) -> tuple[dict, str]:
    rep = obstruction_report(model, budget=args.budget, coefficient_bound=args.coefficient_bound)
    found = [_massey_json(model, r) for r in rep.nonvanishing]
    conclusion = (
        "not geometrically-Bott-Chern-formal (for every metric)"
        if rep.obstructed
        else "no obstruction found"
    )
    data = {
        "model": model.name,
        "candidates": rep.candidates,
        "triples_examined": rep.triples_examined,
        "triples_defined": rep.triples_defined,
        "nonvanishing_count": len(found),
        "nonvanishing": found,
        "metric_formal": rep.verdict.formal,
        "conclusion": conclusion,
        "coefficient_bound": rep.coefficient_bound,
        "note": rep.note,
    }
    lines = [
        f"{model.name}: {rep.triples_defined} defined triple products among {rep.candidates} harmonic classes",
        f"  non-vanishing: {len(found)}",
    ]
    for r in found[:5]:
        lines.append(f"    <{', '.join(r['inputs'])}> = [{r['representative']}]")
    if len(found) > 5:
        lines.append(f"    ... {len(found) - 5} more")
    lines.append(f"  declared metric geometrically-BC-formal: {'yes' if rep.verdict.formal else 'no'}")
    lines.append(f"  conclusion: {conclusion}")
    lines.append(f"  note: {rep.note}")
    return data, "\n".join(lines)


def _cmd_delta(args, model) -> tuple[dict, str]:
    deltas = [delta_k(model, k) for k in range(2 * model.n + 1)]
    lemma = ddbar_lemma(model)
    data = {"model": model.name, "delta": deltas, "ddbar_lemma": lemma}
    text = (
        f"Delta^k of {model.name}: " + " ".join(map(str, deltas))
        + f"\nddbar-lemma: {'holds' if lemma else 'fails'}"
    )
    return data, text


def _cmd_show(args, model) -> tuple[dict, str]:
    doc = emit_model(model)
    return {"model": model.name, "document": doc}, doc.rstrip()


COMMANDS = {
    "list": _cmd_list,
    "validate": _cmd_validate,
    "show": _cmd_show,
    "cohomology": _cmd_cohomology,
    "harmonic": _cmd_harmonic,
    "formality": _cmd_formality,
    "massey": _cmd_massey,
    "obstructions": _cmd_obstructions,
    "delta": _cmd_delta,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS so a subcommand does not reset a value given before it
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--model-file", metavar="PATH", default=argparse.SUPPRESS)

    parser = _Parser(prog="bcformal", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, model=True):
        p = sub.add_parser(name, help=help_text, parents=[common])
        if model:
            p.add_argument("model", nargs="?", help="catalog name (omit with --model-file)")
        return p

    add("list", "list the built-in models", model=False)
    add("validate", "check d^2 = 0, integrability and the metric")
    add("show", "print the model document")
    p = add("cohomology", "cohomology dimensions or one group with representatives")
    p.add_argument("--theory", required=True, choices=THEORY_CHOICES)
    p.add_argument("--bidegree", metavar="P,Q")
    p = add("harmonic", "harmonic forms of the declared metric")
    p.add_argument("--theory", required=True, choices=THEORY_CHOICES)
    p.add_argument("--bidegree", metavar="P,Q")
    p = add("formality", "geometric formality verdict with witness")
    p.add_argument("--theory", required=True, choices=("bc", "bottchern", "dolbeault"))
    p = add("massey", "triple Aeppli-Bott-Chern-Massey product")
    p.add_argument("--a", required=True, metavar="FORM")
    p.add_argument("--b", required=True, metavar="FORM")
    p.add_argument("--c", required=True, metavar="FORM")
    p = add("obstructions", "scan harmonic classes for non-vanishing Massey products")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--coefficient-bound", type=int, default=0)
    add("delta", "non-Kahler degrees Delta^k and the ddbar-lemma")
    return parser


def _load_model(args) -> Model | None:
    if args.command == "list":
        return None
    path = getattr(args, "model_file", None)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
        return parse_model(text, check=args.command != "validate")
    if not args.model:
        raise UsageError("a model name or --model-file is required")
    return catalog.builtin(args.model).model


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    fmt = "text"
    try:
        args = build_parser().parse_args(list(argv))
        fmt = getattr(args, "format", None) or os.environ.get(FORMAT_ENV, "text")
        if fmt not in ("text", "json"):
            raise UsageError(f"unknown output format {fmt!r}")
        model = _load_model(args)
        data, text = COMMANDS[args.command](args, model)
    except UsageError as exc:
        print(f"bcformal: {exc}", file=stderr)
        return 1
    except ParseError as exc:
        print(f"bcformal: parse error: {exc}", file=stderr)
        return 1
    except ModelValidationError as exc:
        print(f"bcformal: invalid model: {exc}", file=stderr)
        return 1
    except (ProductNotExact, NotACocycle) as exc:
        print(f"bcformal: Massey product undefined: {exc}", file=stderr)
        return 2
    except (BudgetExceeded, WeightOverflow) as exc:
        print(f"bcformal: {exc}", file=stderr)
        return 3
    except (UnknownModel, InvalidTheoryDegree, BCFormalError) as exc:
        print(f"bcformal: {exc}", file=stderr)
        return 1
    if fmt == "json":
        print(json.dumps({"command": args.command, **data}, indent=2, sort_keys=False), file=stdout)
    else:
        print(text, file=stdout)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
