"""Comparison harness: independent oracle, convergence studies, verify suites.

Study rows and verify output are deterministic by construction: values come
from pure fixed-point computations, rows are emitted in grid order, and the
wall-clock column is opt-in so default output is byte-identical across runs
and thread counts.  PI_KILN_THREADS caps the worker pool (0 or unset = auto).
"""

from __future__ import annotations

import cmath
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from io import StringIO

from . import numerics, series
from .bruno import bk_eval, bk_symbolic, render_bk
from .errors import SingularPoint, UnknownId
from .exact import cos_pi_rational, radical_eval, sin_pi_rational
from .numerics import BigFixed, PrecisionContext
from .oracle import reference_pi, reference_pi_alt, reference_pi_power  # noqa: F401  (re-exported: the oracle lives here conceptually)
from .partitions import enumerate_constrained
from .products import (
    catalog_eval,
    catalog_limit,
    euler_wallis,
    functional_equation_check,
    golden_ratio_check,
)

PARTITION_COUNTS = (1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77)


def thread_count() -> int:
    """Worker cap from PI_KILN_THREADS; 0 or unset means auto."""
    raw = os.environ.get("PI_KILN_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return max(1, n)


def _map_ordered(fn, items):
    """Map preserving order, parallel when more than one worker is allowed."""
    workers = thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Derivative oracle (double precision, Cauchy circle) for the verify suite
# ---------------------------------------------------------------------------


def derivative_oracle(x: float, k: int, samples: int = 128) -> float:
    """k-th derivative of 1/sin(pi t) at x from a Cauchy-circle trapezoid sum.

    Complex double arithmetic only; shares nothing with the partition or
    symbolic machinery it is used to check.
    """
    dist = min(x - math.floor(x), math.ceil(x) - x)
    radius = 0.6 * dist
    acc = 0j
    for j in range(samples):
        th = 2.0 * math.pi * j / samples
        z = x + radius * cmath.exp(1j * th)
        acc += (1.0 / cmath.sin(math.pi * z)) * cmath.exp(-1j * th * k)
    return math.factorial(k) * (acc / samples).real / radius**k


# ---------------------------------------------------------------------------
# Convergence studies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StudyRow:
    formula_id: str
    params: dict
    n: int
    value: str
    abs_error: str
    bound: str
    elapsed_ms: float


def _parse_target(target: str) -> tuple:
    parts = target.split(":")
    formula_id = parts[0].strip()
    params: dict = {}
    for piece in parts[1:]:
        if not piece:
            continue
        key, _, raw = piece.partition("=")
        key = key.strip()
        raw = raw.strip()
        try:
            if key in ("k", "orders"):
                params[key] = int(raw)
            elif key in ("x", "a"):
                params[key] = Fraction(raw)
            else:
                params[key] = raw
        except (ValueError, ZeroDivisionError) as exc:
            raise UnknownId(f"bad target parameter {piece!r}") from exc
    return formula_id, params


_SERIES_IDS = ("recip-sine", "cot", "cot-diff", "appendix", "pi-power")


def _study_point(formula_id: str, params: dict, n: int, ctx: PrecisionContext):
    """(value, bound, limit) for one grid point of a study target."""
    method = params.get("method", "accelerated")
    orders = params.get("orders", 1)
    x = params.get("x")
    if formula_id in ("recip-sine", "cot", "cot-diff", "pi-power") and x is None:
        raise UnknownId(f"target {formula_id!r} requires x=<p/q>")
    if formula_id == "cot-diff" and params.get("a") is None:
        raise UnknownId("target 'cot-diff' requires a=<p/q>")
    if formula_id == "recip-sine":
        stream = series.alternating_power_stream(0, x)
        if method == "direct":
            res = series.direct_alternating_sum(stream, ctx, max_terms=n)
        else:
            res = series.accelerated_alternating_sum(stream, ctx, n_terms=n)
        limit = reciprocal_sine_target(x, ctx)
        return res.value, res.error_bound, limit
    if formula_id == "pi-power":
        k = params.get("k", 0)
        stream = series.alternating_power_stream(k, x)
        if method == "direct":
            s = series.direct_alternating_sum(stream, ctx, max_terms=n)
        else:
            s = series.accelerated_alternating_sum(stream, ctx, n_terms=n)
        wctx = PrecisionContext(ctx.requested_digits + 4, ctx.guard_digits)
        b = bk_eval(k, x, wctx)
        value = s.value.rescale(wctx.scale) / b
        if k % 2:
            value = -value
        bound = (s.error_bound.rescale(wctx.scale) / abs(b)) + wctx.ulp() * 64
        return value.rescale(ctx.scale), bound.rescale(ctx.scale) + ctx.ulp() * 2, reference_pi_power(k + 1, ctx)
    if formula_id == "cot":
        res = series.cotangent_series(x, ctx, n_direct=n, tail_orders=orders)
        return res.value, res.error_bound, cotangent_target(x, ctx)
    if formula_id == "cot-diff":
        a = params.get("a")
        res = series.cot_difference_series(x, a, ctx, n_direct=n, tail_orders=orders)
        limit = cotangent_target(x, ctx) - cotangent_target(a, ctx)
        return res.value, res.error_bound, limit
    if formula_id == "appendix":
        res = series.appendix_pi_series(ctx, n_direct=n, tail_orders=orders)
        return res.value, res.error_bound, reference_pi(ctx)
    # otherwise a product catalog id
    correction = params.get("correction", "first-order").replace("-", "_")
    res = catalog_eval(formula_id, n, ctx, correction=correction)
    return res.value, res.error_bound, catalog_limit(formula_id, ctx)


def convergence_study(target: str, grid, ctx: PrecisionContext | None = None):
    """Evaluate a target over an ascending grid of N; rows in grid order."""
    if ctx is None:
        ctx = PrecisionContext(30)
    formula_id, params = _parse_target(target)
    if formula_id not in _SERIES_IDS:
        catalog_limit(formula_id, ctx)  # raises UnknownId early
    grid = list(grid)

    def row(n: int) -> StudyRow:
        start = time.perf_counter()
        value, bound, limit = _study_point(formula_id, params, n, ctx)
        elapsed = (time.perf_counter() - start) * 1000.0
        err = abs(value - limit)
        shown = {k: str(v) for k, v in params.items()}
        return StudyRow(
            formula_id=formula_id,
            params=shown,
            n=n,
            value=ctx.render(value),
            abs_error=err.to_scientific(3),
            bound=bound.to_scientific(3),
            elapsed_ms=round(elapsed, 3),
        )

    return _map_ordered(row, grid)


def study_to_json(rows, include_timing: bool = False) -> str:
    payload = []
    for r in rows:
        d = {
            "formula_id": r.formula_id,
            "params": r.params,
            "n": r.n,
            "value": r.value,
            "abs_error": r.abs_error,
            "bound": r.bound,
        }
        if include_timing:
            d["elapsed_ms"] = r.elapsed_ms
        payload.append(d)
    return json.dumps(payload, indent=2)


def study_to_csv(rows, include_timing: bool = False) -> str:
    out = StringIO()
    header = "formula_id,params,n,value,abs_error,bound"
    if include_timing:
        header += ",elapsed_ms"
    out.write(header + "\n")
    for r in rows:
        params = ";".join(f"{k}={v}" for k, v in r.params.items())
        line = f"{r.formula_id},{params},{r.n},{r.value},{r.abs_error},{r.bound}"
        if include_timing:
            line += f",{r.elapsed_ms}"
        out.write(line + "\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# Oracle-derived targets
# ---------------------------------------------------------------------------


def reciprocal_sine_target(x: Fraction, ctx: PrecisionContext) -> BigFixed:
    """pi / sin(pi x) from the oracle and the exact table."""
    wctx = PrecisionContext(ctx.requested_digits + 4, ctx.guard_digits)
    s = radical_eval(sin_pi_rational(x), wctx)
    return (reference_pi(wctx) / s).rescale(ctx.scale)


def cotangent_target(x: Fraction, ctx: PrecisionContext) -> BigFixed:
    """pi cos(pi x)/sin(pi x) from the oracle and the exact table."""
    wctx = PrecisionContext(ctx.requested_digits + 4, ctx.guard_digits)
    s = radical_eval(sin_pi_rational(x), wctx)
    c = radical_eval(cos_pi_rational(x), wctx)
    return (reference_pi(wctx) * c / s).rescale(ctx.scale)


# ---------------------------------------------------------------------------
# Verify suites
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    residual: str
    bound: str
    passed: bool


def _check(check_id: str, residual: BigFixed, bound: BigFixed) -> CheckResult:
    return CheckResult(
        check_id, residual.to_scientific(3), bound.to_scientific(3), residual <= bound
    )


def _check_float(check_id: str, residual: float, bound: float) -> CheckResult:
    return CheckResult(check_id, f"{residual:.3e}", f"{bound:.3e}", residual <= bound)


def _series_checks(ctx: PrecisionContext):
    checks = []
    pi = reference_pi(ctx)
    recip_targets = {
        Fraction(1, 4): None,
        Fraction(1, 3): None,
        Fraction(1, 6): None,
        Fraction(1, 2): None,
    }
    for x in recip_targets:
        res = series.reciprocal_sine_series(x, ctx)
        target = reciprocal_sine_target(x, ctx)
        checks.append(
            _check(f"recip-sine-x={x}", abs(res.value - target), res.error_bound + ctx.ulp() * 16)
        )
    for x in recip_targets:
        res = series.cotangent_series(x, ctx)
        target = cotangent_target(x, ctx)
        checks.append(
            _check(f"cot-x={x}", abs(res.value - target), res.error_bound + ctx.ulp() * 16)
        )
    for x in (Fraction(1, 4), Fraction(1, 6)):
        for k in range(0, 7):
            try:
                res = series.pi_power_from_series(k, x, ctx)
            except SingularPoint:
                checks.append(
                    CheckResult(f"pi-power-k={k}-x={x}", "singular", "singular", True)
                )
                continue
            target = reference_pi_power(k + 1, ctx)
            checks.append(
                _check(
                    f"pi-power-k={k}-x={x}",
                    abs(res.value - target),
                    res.error_bound + ctx.ulp() * 16,
                )
            )
    res = series.appendix_pi_series(ctx)
    checks.append(_check("appendix-pi", abs(res.value - pi), res.error_bound + ctx.ulp() * 16))
    res = series.cot_difference_series(Fraction(1, 4), Fraction(1, 2), ctx)
    checks.append(
        _check("cot-diff-1/4-1/2", abs(res.value - pi), res.error_bound + ctx.ulp() * 16)
    )
    for k in (0, 1, 2):
        residual = series.derivative_identity_check(k, Fraction(1, 4), ctx)
        s_res = series.alternating_power_sum(k, Fraction(1, 4), ctx)
        bk_slack = abs(reference_pi_power(k + 1, ctx)).mul_fraction(
            Fraction(3 * k + 64, 1 << ctx.scale)
        )
        checks.append(
            _check(
                f"derivative-identity-k={k}",
                residual,
                s_res.error_bound * 4 + bk_slack + ctx.ulp() * 64,
            )
        )
    return checks


def _products_checks(ctx: PrecisionContext):
    checks = []
    pi = reference_pi(ctx)
    for x in (
        Fraction(1, 4),
        Fraction(1, 2),
        Fraction(1, 5),
        Fraction(1, 10),
        Fraction(1, 3),
        Fraction(1, 6),
    ):
        res = euler_wallis(x, 4000, "first_order", ctx)
        s = radical_eval(sin_pi_rational(x), ctx)
        lhs = res.value * pi.mul_fraction(x)
        slack = pi.mul_fraction(x) * res.error_bound + ctx.ulp() * 64
        checks.append(_check(f"euler-wallis-x={x}", abs(lhs - s), slack))
    res = catalog_eval("viete", 60, ctx)
    checks.append(_check("viete-60", abs(res.value - pi / 2), res.error_bound + ctx.ulp() * 16))
    res = catalog_eval("euler-zeta2", 10**6, ctx)
    target = reference_pi_power(2, ctx) / 6
    checks.append(_check("euler-zeta2-1e6", abs(res.value - target), ctx.from_fraction(Fraction(1, 10**6))))
    residual = golden_ratio_check(10**4, ctx)
    checks.append(_check("golden-ratio-1e4", residual, ctx.from_fraction(Fraction(1, 10**6))))
    res = catalog_eval("euler-pi4", 10**6, ctx)
    checks.append(
        _check("euler-pi4-1e6", abs(res.value - pi / 4), ctx.from_fraction(Fraction(1, 10**5)))
    )
    res = catalog_eval("nested-exponent", 200, ctx)
    checks.append(
        _check("nested-exponent-200", abs(res.value - pi / 2), ctx.from_fraction(Fraction(1, 50)))
    )
    for pid in ("wallis", "odd-square"):
        limit = catalog_limit(pid, ctx)
        res = catalog_eval(pid, 4096, ctx)
        checks.append(_check(f"{pid}-4096", abs(res.value - limit), res.error_bound))
    fe_ctx = PrecisionContext(50)
    for x in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 10)):
        residual = functional_equation_check(x, fe_ctx)
        checks.append(_check(f"functional-eq-x={x}", residual, fe_ctx.ulp() * 8))
    return checks


def _bruno_checks(ctx: PrecisionContext):
    checks = []
    counts_ok = all(
        len(enumerate_constrained(k)) == PARTITION_COUNTS[k] for k in range(13)
    )
    checks.append(CheckResult("partition-counts-k<=12", "0" if counts_ok else "1", "0", counts_ok))
    goldens = {0: "1 / s", 1: "-c / s^2", 2: "(2 - s^2) / (2 s^3)"}
    for k, text in goldens.items():
        got = render_bk(bk_symbolic(k))
        ok = got == text
        checks.append(CheckResult(f"bk-symbolic-{k}", "match" if ok else repr(got), "golden", ok))
    v = bk_eval(2, Fraction(1, 4), ctx)
    expected = numerics.sqrt(ctx.from_int(2)) * 3 / 2
    checks.append(_check("bk-eval-2-1/4", abs(v - expected), ctx.ulp() * 64))
    try:
        bk_eval(1, Fraction(1, 2), ctx)
        checks.append(CheckResult("bk-singular-1-1/2", "no-error", "SingularPoint", False))
    except SingularPoint:
        checks.append(CheckResult("bk-singular-1-1/2", "SingularPoint", "SingularPoint", True))
    for x in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 6)):
        worst = 0.0
        for k in range(1, 9):
            oracle = derivative_oracle(float(x), k) / (math.pi**k * math.factorial(k))
            got = bk_eval(k, x, ctx).to_float()
            worst = max(worst, abs(got - oracle) / abs(oracle))
        checks.append(_check_float(f"derivative-oracle-x={x}", worst, 1e-5))
    return checks


_SUITES = {
    "series": _series_checks,
    "products": _products_checks,
    "bruno": _bruno_checks,
}


def verify(suite: str, digits: int) -> tuple:
    """Run a verification suite; returns (report_text, all_passed).

    Output is byte-identical across runs and thread counts: check order is
    fixed and no timing information is included.
    """
    if suite == "all":
        names = ["series", "products", "bruno"]
    elif suite in _SUITES:
        names = [suite]
    else:
        raise UnknownId(f"unknown suite {suite!r}")
    ctx = PrecisionContext(digits)
    groups = _map_ordered(lambda name: (name, _SUITES[name](ctx)), names)
    lines = []
    total = passed = 0
    for name, checks in groups:
        lines.append(f"== suite: {name} (digits={digits}) ==")
        for c in checks:
            total += 1
            passed += c.passed
            tag = "PASS" if c.passed else "FAIL"
            lines.append(f"{tag} {c.check_id} residual={c.residual} bound={c.bound}")
    lines.append(f"== summary: {passed}/{total} checks passed ==")
    return "\n".join(lines) + "\n", passed == total
