"""Command-line interface.

Subcommands: classify, constant, compare, sweep, verify. Output is a human
table by default, or ``--format json`` / ``--format csv``.

Exit codes: 0 success, 2 invalid parameters, 3 no constant exists (cases J
and K), 4 verification failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from .builtin_examples import REFERENCE_ROWS
from .classifier import THRESHOLD_TOL, Case, classify, product_signature
from .constants import CompareRow, Reason, compare_row, theorem_constant
from .errors import HusError
from .timescale import StepPair
from .verifier import BRUTE_FORCE_CAP, Perturbation, RandomPattern, SearchMode, best_fit, integrate, verify_case

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NO_CONSTANT = 3
EXIT_VERIFY_FAILED = 4

COMPARE_COLUMNS = ["lambda", "case", "theorem_constant", "andras_even", "andras_odd", "winner"]
EXAMPLE_COLUMNS = COMPARE_COLUMNS + [
    "example", "alpha", "beta", "published_theorem", "published_even", "published_odd", "published_winner",
    "delta_theorem", "delta_even", "delta_odd",
]
SWEEP_COLUMNS = ["lambda", "case", "theorem_constant", "andras_even", "andras_odd", "exceptional"]

# options whose values may legitimately start with '-'
_VALUE_OPTIONS = ("--lambda", "--lambda-min", "--lambda-max", "--alpha", "--beta")


class UsageError(Exception):
    pass


def parse_real(text: str) -> float:
    """Decimal or exact fraction such as ``-1/2``."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from exc


def parse_real_list(text: str) -> list[float]:
    items = [s for s in text.split(",") if s.strip()]
    return [parse_real(s) for s in items]


def num(x: Optional[float]) -> Optional[float]:
    """Round to 15 significant digits for serialisation."""
    if x is None:
        return None
    return float(f"{x:.15g}")


def _cell(v: Any, empty: str) -> str:
    if v is None:
        return empty
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def render(doc: dict, fmt: str, columns: Optional[list[str]] = None) -> str:
    """Serialise a document; tabular documents carry their records under ``rows``."""
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    rows = doc["rows"] if "rows" in doc else [doc]
    cols = columns or list(rows[0].keys())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c), "") for c in cols])
        return buf.getvalue()
    if "rows" not in doc:
        width = max(len(k) for k in doc)
        return "".join(f"{k:<{width}}  {_cell(v, '-')}\n" for k, v in doc.items())
    table = [cols] + [[_cell(r.get(c), "-") for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in table]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _steps(args: argparse.Namespace) -> StepPair:
    if args.alpha is None or args.beta is None:
        raise UsageError("--alpha and --beta are required")
    return StepPair(args.alpha, args.beta)


def _require_lambda(args: argparse.Namespace) -> float:
    if args.lam is None:
        raise UsageError("--lambda is required")
    return args.lam


def _row_doc(row: CompareRow) -> dict:
    return {
        "lambda": num(row.lam),
        "case": row.case.value if row.case else None,
        "theorem_constant": num(row.theorem_constant),
        "andras_even": num(row.andras_even),
        "andras_odd": num(row.andras_odd),
        "winner": row.winner,
    }


def cmd_classify(args: argparse.Namespace) -> tuple[dict, int, Optional[list[str]]]:
    steps = _steps(args)
    lam = _require_lambda(args)
    label = classify(steps, lam, args.tol)
    th = label.thresholds
    doc = {
        "alpha": num(steps.alpha),
        "beta": num(steps.beta),
        "lambda": num(lam),
        "case": label.tag.value,
        "lambda_plus": num(th.lambda_plus),
        "lambda_minus": num(th.lambda_minus),
        "product": num(th.product),
        "discriminant": num(th.discriminant),
        "signature": product_signature(steps, lam, args.tol).value,
    }
    return doc, EXIT_OK, None


def cmd_constant(args: argparse.Namespace) -> tuple[dict, int, Optional[list[str]]]:
    steps = _steps(args)
    lam = _require_lambda(args)
    v = theorem_constant(steps, lam, args.tol)
    doc = {
        "alpha": num(steps.alpha),
        "beta": num(steps.beta),
        "lambda": num(lam),
        "case": v.case.tag.value,
        "constant": num(v.constant),
        "minimal": v.minimal,
        "reason": v.reason.value,
    }
    code = EXIT_OK if v.reason is Reason.HAS_CONSTANT else EXIT_NO_CONSTANT
    return doc, code, None


def _examples_doc(tol: float) -> dict:
    rows = []
    for ref in REFERENCE_ROWS:
        row = _row_doc(compare_row(StepPair(ref.alpha, ref.beta), ref.lam, tol))

        def delta(key: str, published: float) -> Optional[float]:
            return None if row[key] is None else num(row[key] - published)

        row.update({
            "example": ref.example,
            "alpha": num(ref.alpha),
            "beta": num(ref.beta),
            "published_theorem": ref.theorem_constant,
            "published_even": ref.andras_even,
            "published_odd": ref.andras_odd,
            "published_winner": ref.winner,
            "delta_theorem": delta("theorem_constant", ref.theorem_constant),
            "delta_even": delta("andras_even", ref.andras_even),
            "delta_odd": delta("andras_odd", ref.andras_odd),
        })
        rows.append(row)
    return {"rows": rows}


def cmd_compare(args: argparse.Namespace) -> tuple[dict, int, Optional[list[str]]]:
    if args.examples:
        return _examples_doc(args.tol), EXIT_OK, EXAMPLE_COLUMNS
    steps = _steps(args)
    if not args.lambdas:
        raise UsageError("--lambda needs at least one value")
    rows = [_row_doc(compare_row(steps, lam, args.tol)) for lam in args.lambdas]
    return {"alpha": num(steps.alpha), "beta": num(steps.beta), "rows": rows}, EXIT_OK, COMPARE_COLUMNS


def cmd_sweep(args: argparse.Namespace) -> tuple[dict, int, Optional[list[str]]]:
    steps = _steps(args)
    if args.lambda_min is None or args.lambda_max is None:
        raise UsageError("--lambda-min and --lambda-max are required")
    if not args.lambda_min < args.lambda_max:
        raise UsageError("--lambda-min must be below --lambda-max")
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    rows = []
    for lam in np.linspace(args.lambda_min, args.lambda_max, args.samples):
        row = _row_doc(compare_row(steps, float(lam), args.tol))
        del row["winner"]
        row["exceptional"] = row["case"] in (Case.J.value, Case.K.value)
        rows.append(row)
    return {"alpha": num(steps.alpha), "beta": num(steps.beta), "rows": rows}, EXIT_OK, SWEEP_COLUMNS


def cmd_verify(args: argparse.Namespace) -> tuple[dict, int, Optional[list[str]]]:
    steps = _steps(args)
    lam = _require_lambda(args)
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.epsilon <= 0:
        raise UsageError("--epsilon must be positive")
    mode = None if args.mode == "auto" else SearchMode(args.mode)
    if mode is SearchMode.BRUTE_FORCE and args.n > BRUTE_FORCE_CAP:
        raise UsageError(f"brute force is capped at {BRUTE_FORCE_CAP} points")
    rep = verify_case(steps, lam, args.n, mode)
    bound = rep.empirical_lower_bound
    random_ratio = None
    if args.seed is not None and rep.case not in (Case.J, Case.K):
        traj = integrate(steps, lam, 0.0, Perturbation(args.epsilon, RandomPattern(args.seed)), args.n)
        random_ratio = best_fit(traj).ratio
    doc = {
        "alpha": num(steps.alpha),
        "beta": num(steps.beta),
        "lambda": num(lam),
        "case": rep.case.value,
        "n_points": rep.n_points,
        "mode": rep.mode.value if rep.mode else None,
        "epsilon": num(args.epsilon),
        "claimed_constant": num(rep.claimed_constant),
        "empirical_lower_bound": num(bound),
        "empirical_deviation": num(None if bound is None else bound * args.epsilon),
        "margin": num(rep.margin),
        "pass": rep.passed,
        "pattern": "".join("+" if s > 0 else "-" for s in rep.pattern),
        "ratio_n": num(rep.growth[0]) if rep.growth else None,
        "ratio_2n": num(rep.growth[1]) if rep.growth else None,
        "seed": args.seed,
        "random_ratio": num(random_ratio),
    }
    return doc, EXIT_OK if rep.passed else EXIT_VERIFY_FAILED, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hustab",
        description="Hyers-Ulam stability constants for x^Delta = lambda*x on a two-step time scale.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=parse_real, help="first step size")
    common.add_argument("--beta", type=parse_real, help="second step size")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--tol", type=float, default=THRESHOLD_TOL,
                        help="snap tolerance for exceptional lambda values (default %(default)g)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="report the case for (alpha, beta, lambda)")
    p.add_argument("--lambda", dest="lam", type=parse_real)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("constant", parents=[common], help="stability constant for the case")
    p.add_argument("--lambda", dest="lam", type=parse_real)
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("compare", parents=[common], help="compare against the sup-plus-integral constant")
    p.add_argument("--lambda", dest="lambdas", type=parse_real_list, default=None,
                   help="comma-separated lambda values")
    p.add_argument("--examples", action="store_true", help="run the built-in reference comparisons")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", parents=[common], help="tabulate constants over a lambda range")
    p.add_argument("--lambda-min", type=parse_real)
    p.add_argument("--lambda-max", type=parse_real)
    p.add_argument("--samples", type=int, default=101)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="adversarial check of the constant")
    p.add_argument("--lambda", dest="lam", type=parse_real)
    p.add_argument("--n", type=int, default=13, help="number of grid points (default 13)")
    p.add_argument("--mode", choices=("auto",) + tuple(m.value for m in SearchMode), default="auto")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--lambda -1/2`` into ``--lambda=-1/2`` so argparse accepts it."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        doc, code, columns = args.func(args)
    except (UsageError, HusError, ValueError) as exc:
        print(f"hustab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = render(doc, args.format, columns)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
