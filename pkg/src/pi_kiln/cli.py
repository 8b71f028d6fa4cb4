"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error (argparse),
3 numeric/domain error (pole, singular point, unsupported angle, ...).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import harness, series
from .bruno import bk_eval, bk_symbolic, render_bk
from .errors import KilnError
from .fourier import fourier_partial_sum, residual_table
from .numerics import PrecisionContext
from .products import CATALOG, catalog_eval, catalog_ids, catalog_limit


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _grid(text: str) -> list:
    try:
        return [int(piece) for piece in text.split(",") if piece]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pi-kiln",
        description="High-precision series and infinite-product evaluation of powers of pi.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi-power", help="pi^(k+1) from the alternating reciprocal-power series")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", type=_fraction, required=True, metavar="p/q")
    p.add_argument("--digits", type=int, required=True)
    p.add_argument("--method", choices=["direct", "accelerated"], default="accelerated")

    p = sub.add_parser("bk", help="closed form (and value) of the series prefactor")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", type=_fraction, default=None, metavar="p/q")
    p.add_argument("--digits", type=int, default=30)

    p = sub.add_parser("series", help="evaluate one of the series identities")
    p.add_argument("--id", choices=["recip-sine", "cot", "cot-diff", "appendix"], required=True)
    p.add_argument("--x", type=_fraction, default=None, metavar="p/q")
    p.add_argument("--a", type=_fraction, default=None, metavar="p/q")
    p.add_argument("--digits", type=int, required=True)

    p = sub.add_parser("product", help="evaluate a catalog product")
    p.add_argument("--id", choices=catalog_ids())
    p.add_argument("--n", type=int)
    p.add_argument("--correction", choices=["none", "first-order"], default="first-order")
    p.add_argument("--digits", type=int)
    p.add_argument("--list", action="store_true", help="list the catalog and exit")

    p = sub.add_parser("study", help="convergence study over a grid of N")
    p.add_argument("--target", required=True, metavar="id[:key=value...]")
    p.add_argument("--grid", type=_grid, required=True, metavar="n1,n2,...")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--digits", type=int, default=30)
    p.add_argument("--timing", action="store_true", help="include elapsed_ms (non-deterministic)")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=["all", "series", "products", "bruno"], required=True)
    p.add_argument("--digits", type=int, required=True)

    p = sub.add_parser("fourier-check", help="closed-form coefficients vs quadrature")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--nmax", type=int, required=True)

    return parser


def _cmd_pi_power(args) -> int:
    ctx = PrecisionContext(args.digits)
    res = series.pi_power_from_series(args.k, args.x, ctx, method=args.method)
    print(f"pi^{args.k + 1} = {ctx.render(res.value)}")
    print(f"error_bound <= {res.error_bound.to_scientific(3)}")
    print(f"terms_used = {res.terms_used}")
    print(f"method = {res.method}")
    return 0


def _cmd_bk(args) -> int:
    sym = bk_symbolic(args.k)
    print(f"B_{args.k} = {render_bk(sym)}")
    if args.x is not None:
        ctx = PrecisionContext(args.digits)
        value = bk_eval(args.k, args.x, ctx)
        print(f"B_{args.k}({args.x}) = {ctx.render(value)}")
    return 0


def _cmd_series(args) -> int:
    ctx = PrecisionContext(args.digits)
    if args.id == "appendix":
        res = series.appendix_pi_series(ctx)
        label = "appendix-pi"
    elif args.id == "recip-sine":
        if args.x is None:
            print("error: --x is required for recip-sine", file=sys.stderr)
            return 2
        res = series.reciprocal_sine_series(args.x, ctx)
        label = f"pi/sin(pi*{args.x})"
    elif args.id == "cot":
        if args.x is None:
            print("error: --x is required for cot", file=sys.stderr)
            return 2
        res = series.cotangent_series(args.x, ctx)
        label = f"pi*cot(pi*{args.x})"
    else:  # cot-diff
        if args.x is None or args.a is None:
            print("error: --x and --a are required for cot-diff", file=sys.stderr)
            return 2
        res = series.cot_difference_series(args.x, args.a, ctx)
        label = f"pi*cot(pi*{args.x}) - pi*cot(pi*{args.a})"
    print(f"{label} = {ctx.render(res.value)}")
    print(f"error_bound <= {res.error_bound.to_scientific(3)}")
    print(f"terms_used = {res.terms_used}")
    print(f"method = {res.method}")
    return 0


def _cmd_product(args) -> int:
    if args.list:
        for spec in CATALOG.values():
            print(f"{spec.id}: {spec.description}")
            print(f"    limit = {spec.limit_expr}   [{spec.convergence_class}]")
        return 0
    if args.id is None or args.n is None or args.digits is None:
        print("error: --id, --n and --digits are required (or use --list)", file=sys.stderr)
        return 2
    ctx = PrecisionContext(args.digits)
    correction = args.correction.replace("-", "_")
    res = catalog_eval(args.id, args.n, ctx, correction=correction)
    spec = CATALOG[args.id]
    limit = catalog_limit(args.id, ctx)
    print(f"{args.id} [n={res.factors_used}, corrected={res.corrected}] = {ctx.render(res.value)}")
    print(f"limit: {spec.limit_expr} = {ctx.render(limit)}")
    print(f"abs_error = {abs(res.value - limit).to_scientific(3)}")
    print(f"error_bound <= {res.error_bound.to_scientific(3)}")
    print(f"class = {spec.convergence_class}")
    return 0


def _cmd_study(args) -> int:
    ctx = PrecisionContext(args.digits)
    rows = harness.convergence_study(args.target, args.grid, ctx)
    if args.format == "json":
        print(harness.study_to_json(rows, include_timing=args.timing))
    else:
        print(harness.study_to_csv(rows, include_timing=args.timing), end="")
    return 0


def _cmd_verify(args) -> int:
    report, ok = harness.verify(args.suite, args.digits)
    print(report, end="")
    return 0 if ok else 1


def _cmd_fourier_check(args) -> int:
    rows = residual_table(args.alpha, args.nmax)
    print("n closed quadrature abs_diff")
    for n, closed, quad, diff in rows:
        print(f"{n} {closed:.15e} {quad:.15e} {diff:.3e}")
    worst = max(row[3] for row in rows)
    print(f"max_abs_diff = {worst:.3e}")
    limit = fourier_partial_sum(args.alpha, 0.0, max(args.nmax * 100, 1000))
    print(f"partial_sum_at_zero(n={max(args.nmax * 100, 1000)}) = {limit:.12f} (limit 1)")
    return 0


_COMMANDS = {
    "pi-power": _cmd_pi_power,
    "bk": _cmd_bk,
    "series": _cmd_series,
    "product": _cmd_product,
    "study": _cmd_study,
    "verify": _cmd_verify,
    "fourier-check": _cmd_fourier_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except KilnError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
