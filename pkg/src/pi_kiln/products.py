"""Infinite products with pi (or the golden ratio) as their limit.

Quadratic-class products (factors 1 + O(1/n^2)) get an optional first-order
tail correction: the log of the discarded tail is analytically ~ coef * psi_N
with psi_N = 1/N - 1/(2 N^2), so multiplying by exp(coef * psi_N) upgrades
O(1/N) error to O(1/N^3).  The nested-exponent product is evaluated entirely
in log space; the two prime products run over an ascending sieve.  Every
result carries an honest error bound (demo-class entries use calibrated
envelopes, recorded next to the evaluator).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import numerics
from .errors import OutOfRange, PoleAtInteger, UnknownId
from .exact import golden_ratio, radical_eval, sin_pi_rational
from .numerics import BigFixed, PrecisionContext
from .oracle import reference_pi, reference_pi_power


@dataclass(frozen=True)
class ProductSpec:
    id: str
    description: str
    limit_expr: str
    convergence_class: str  # "quadratic" | "geometric" | "prime" | "slow"


@dataclass(frozen=True)
class ProductResult:
    value: BigFixed
    factors_used: int
    corrected: bool
    error_bound: BigFixed

    def __post_init__(self) -> None:
        if self.error_bound.mantissa <= 0:
            raise ValueError("error_bound must be positive")


def _work_context(ctx: PrecisionContext, terms: int) -> PrecisionContext:
    extra = math.ceil(math.log10(max(terms, 10))) + 2
    return PrecisionContext(ctx.requested_digits + extra, ctx.guard_digits)


def _finish(value_w: BigFixed, bound_w: BigFixed, ctx: PrecisionContext, n: int, corrected: bool) -> ProductResult:
    value = value_w.rescale(ctx.scale)
    bound = abs(bound_w).rescale(ctx.scale) + ctx.ulp() * 2
    return ProductResult(value, n, corrected, bound)


def _psi(n: int, beta: Fraction = Fraction(0)) -> Fraction:
    """Two-term tail of sum_{m>n} 1/(m+beta)^2; undershoots by <= 1/(6 (n+beta)^3)."""
    b = n + beta
    return 1 / b - 1 / (2 * b * b)


# ---------------------------------------------------------------------------
# Euler-Wallis product and its rational instances
# ---------------------------------------------------------------------------


def euler_wallis(
    x: Fraction, n: int, correction: str = "first_order", ctx: PrecisionContext | None = None
) -> ProductResult:
    """prod_{m=1..n} (1 - x^2/m^2) -> sin(pi x)/(pi x), for 0 < x < 1.

    correction="first_order" multiplies by exp(-x^2 psi_n), cancelling the
    leading log-tail; the remaining bound is O(1/n^3).
    """
    x = Fraction(x)
    if ctx is None:
        ctx = PrecisionContext(30)
    if not (0 < x < 1):
        raise OutOfRange(f"euler_wallis requires 0 < x < 1, got {x}")
    if correction not in ("none", "first_order"):
        raise ValueError(f"unknown correction {correction!r}")
    if n < 1:
        raise OutOfRange("n must be >= 1")
    wctx = _work_context(ctx, n)
    x2 = x * x
    acc = wctx.one()
    for m in range(1, n + 1):
        acc = acc.mul_fraction(1 - x2 / (m * m))
    corrected = correction == "first_order"
    if corrected:
        acc = acc * numerics.exp(wctx.from_fraction(-x2 * _psi(n)))
        # psi truncation + the quartic term of ln(1 - x^2/m^2)
        err_log = x2 * Fraction(1, 6 * n**3) + x2 * x2 * Fraction(1, 4 * n**3)
    else:
        err_log = x2 * Fraction(1, n)
    bound = abs(acc).mul_fraction(2 * err_log) + wctx.ulp() * (2 * n + 32)
    return _finish(acc, bound, ctx, n, corrected)


# ---------------------------------------------------------------------------
# Classic products
# ---------------------------------------------------------------------------


def _wallis(n: int, correction: str, ctx: PrecisionContext) -> ProductResult:
    wctx = _work_context(ctx, n)
    acc = wctx.one()
    for m in range(1, n + 1):
        acc = acc.mul_fraction(Fraction(4 * m * m, 4 * m * m - 1))
    corrected = correction == "first_order"
    if corrected:
        acc = acc * numerics.exp(wctx.from_fraction(_psi(n) / 4))
        err_log = Fraction(1, 12 * n**3)
    else:
        err_log = Fraction(1, 4 * n)
    bound = abs(acc).mul_fraction(2 * err_log) + wctx.ulp() * (2 * n + 32)
    return _finish(acc, bound, ctx, n, corrected)


def _odd_square(n: int, correction: str, ctx: PrecisionContext) -> ProductResult:
    wctx = _work_context(ctx, n)
    acc = wctx.one()
    for m in range(1, n + 1):
        q = (2 * m + 1) ** 2
        acc = acc.mul_fraction(Fraction(q - 1, q))
    corrected = correction == "first_order"
    if corrected:
        acc = acc * numerics.exp(wctx.from_fraction(-_psi(n, Fraction(1, 2)) / 4))
        err_log = Fraction(1, 12 * n**3)
    else:
        err_log = Fraction(1, 4 * n)
    bound = abs(acc).mul_fraction(2 * err_log) + wctx.ulp() * (2 * n + 32)
    return _finish(acc, bound, ctx, n, corrected)


def viete(iterations: int, ctx: PrecisionContext) -> ProductResult:
    """prod 1/cos(pi/2^m) -> pi/2 via nested radicals r_{m+1} = sqrt(2 + r_m).

    The partial product equals 2^m sin(pi/2^(m+1)), so the error follows
    (pi^3/48) 4^-m; the bound uses 0.8 * 4^-m plus radical truncation noise.
    """
    if iterations < 1:
        raise OutOfRange("iterations must be >= 1")
    wctx = _work_context(ctx, iterations)
    two = wctx.from_int(2)
    r = numerics.sqrt(two)
    acc = wctx.one()
    for _ in range(iterations):
        acc = acc * two / r
        r = numerics.sqrt(two + r)
    bound = wctx.from_fraction(Fraction(4, 5) / 4**iterations) + wctx.ulp() * (
        4 * iterations + 32
    )
    return _finish(acc, bound, ctx, iterations, False)


# ---------------------------------------------------------------------------
# Prime products
# ---------------------------------------------------------------------------


def prime_sieve(limit: int) -> list:
    """All primes <= limit, ascending (plain sieve of Eratosthenes)."""
    if limit < 2:
        raise OutOfRange("limit must be >= 2")
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            start = p * p
            flags[start : limit + 1 : p] = b"\x00" * ((limit - start) // p + 1)
    return [i for i, keep in enumerate(flags) if keep]


def _euler_zeta2(limit: int, ctx: PrecisionContext) -> ProductResult:
    primes = prime_sieve(limit)
    wctx = _work_context(ctx, len(primes))
    acc = wctx.one()
    for p in primes:
        acc = acc.mul_fraction(Fraction(p * p, p * p - 1))
    # sum_{p > limit} 1/(p^2-1) <= sum_{n > limit} 1/(n^2-1) <= 1/limit
    bound = abs(acc).mul_fraction(Fraction(2, limit)) + wctx.ulp() * (len(primes) + 32)
    return _finish(acc, bound, ctx, len(primes), False)


def _euler_pi4(limit: int, ctx: PrecisionContext) -> ProductResult:
    """Conditionally convergent: odd primes ascending, p/(p + (-1)^((p+1)/2)).

    No quantitative tail estimate is attempted; the bound is a calibrated
    envelope ~2/(sqrt(limit) ln limit) (observed errors: 1.4e-3 at 1e3,
    1.0e-3 at 1e4, 2.7e-4 at 1e5, 1.7e-6 at 1e6).
    """
    primes = prime_sieve(limit)
    wctx = _work_context(ctx, len(primes))
    acc = wctx.one()
    for p in primes:
        if p == 2:
            continue
        eps = -1 if p % 4 == 1 else 1
        acc = acc.mul_fraction(Fraction(p, p + eps))
    bound = wctx.from_fraction(Fraction(3, math.isqrt(limit) * limit.bit_length()))
    bound = bound + wctx.ulp() * (len(primes) + 32)
    return _finish(acc, bound, ctx, len(primes), False)


# ---------------------------------------------------------------------------
# Nested-exponent product (log space)
# ---------------------------------------------------------------------------


def _nested_exponent(n: int, ctx: PrecisionContext) -> ProductResult:
    """prod (1/2n)^(2/(2n-1)) * [prod_{k<=n} (2k)^(2k)/(2k-1)^(2k-1)]^(4/(4n^2-1)).

    Rational exponents make direct powering awkward, so the whole partial
    product is accumulated as a log.  Convergence is slow; the calibrated
    envelope bit_length(n)/n tracks the observed ~0.36 ln(n)/n error with a
    factor ~4 of headroom (observed: 2.8e-2 at 50, 9.7e-3 at 200).
    """
    if n < 1:
        raise OutOfRange("n must be >= 1")
    wctx = _work_context(ctx, n)
    total = wctx.zero()
    inner = wctx.zero()
    for m in range(1, n + 1):
        ln_even = numerics.ln(wctx.from_int(2 * m))
        ln_odd = numerics.ln(wctx.from_int(2 * m - 1))
        inner = inner + ln_even * (2 * m) - ln_odd * (2 * m - 1)
        total = total - ln_even.mul_fraction(Fraction(2, 2 * m - 1))
        total = total + inner.mul_fraction(Fraction(4, 4 * m * m - 1))
    value = numerics.exp(total)
    bound = wctx.from_fraction(Fraction(n.bit_length(), n)) + wctx.ulp() * (8 * n + 32)
    return _finish(value, bound, ctx, n, False)


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

_EW_POINTS = {
    "euler-wallis-1-4": Fraction(1, 4),
    "euler-wallis-1-2": Fraction(1, 2),
    "euler-wallis-1-5": Fraction(1, 5),
    "euler-wallis-1-10": Fraction(1, 10),
    "euler-wallis-1-3": Fraction(1, 3),
    "euler-wallis-1-6": Fraction(1, 6),
}

_EW_LIMITS = {
    "euler-wallis-1-4": "2*sqrt(2)/pi",
    "euler-wallis-1-2": "2/pi",
    "euler-wallis-1-5": "5*sqrt(3-phi)/(2*pi)",
    "euler-wallis-1-10": "5/(pi*phi)",
    "euler-wallis-1-3": "3*sqrt(3)/(2*pi)",
    "euler-wallis-1-6": "3/pi",
}

CATALOG: dict = {}


def _register(spec: ProductSpec) -> None:
    if spec.id in CATALOG:
        raise ValueError(f"duplicate catalog id {spec.id}")
    CATALOG[spec.id] = spec


for _id, _x in _EW_POINTS.items():
    _register(
        ProductSpec(
            _id,
            f"prod (1 - x^2/n^2), the sine factorization, at x = {_x}",
            _EW_LIMITS[_id],
            "quadratic",
        )
    )
_register(ProductSpec("wallis", "prod (2n/(2n-1)) (2n/(2n+1))", "pi/2", "quadratic"))
_register(ProductSpec("odd-square", "prod (1 - 1/(2n+1)^2)", "pi/4", "quadratic"))
_register(
    ProductSpec("viete", "prod 1/cos(pi/2^n) via nested radicals", "pi/2", "geometric")
)
_register(ProductSpec("euler-zeta2", "prod p^2/(p^2-1) over primes", "pi^2/6", "prime"))
_register(
    ProductSpec(
        "euler-pi4", "prod p/(p + (-1)^((p+1)/2)) over odd primes", "pi/4", "prime"
    )
)
_register(
    ProductSpec(
        "nested-exponent",
        "prod (1/2n)^(2/(2n-1)) [prod (2k)^2k/(2k-1)^(2k-1)]^(4/(4n^2-1))",
        "pi/2",
        "slow",
    )
)


def catalog_ids() -> list:
    return list(CATALOG)


def catalog_eval(
    id: str, n: int, ctx: PrecisionContext, correction: str = "first_order"
) -> ProductResult:
    """Evaluate a catalog entry with n factors (or iterations, or sieve limit).

    The correction flag applies to the quadratic class; other classes have no
    analytic first-order tail and ignore it.
    """
    if id not in CATALOG:
        raise UnknownId(f"no catalog entry {id!r}")
    if id in _EW_POINTS:
        return euler_wallis(_EW_POINTS[id], n, correction, ctx)
    if id == "wallis":
        return _wallis(n, correction, ctx)
    if id == "odd-square":
        return _odd_square(n, correction, ctx)
    if id == "viete":
        return viete(n, ctx)
    if id == "euler-zeta2":
        return _euler_zeta2(n, ctx)
    if id == "euler-pi4":
        return _euler_pi4(n, ctx)
    if id == "nested-exponent":
        return _nested_exponent(n, ctx)
    raise UnknownId(f"no evaluator for {id!r}")  # pragma: no cover


def catalog_limit(id: str, ctx: PrecisionContext) -> BigFixed:
    """The exact limit of a catalog entry, via the oracle pi and exact radicals."""
    if id not in CATALOG:
        raise UnknownId(f"no catalog entry {id!r}")
    wctx = PrecisionContext(ctx.requested_digits + 4, ctx.guard_digits)
    pi = reference_pi(wctx)
    if id in _EW_POINTS:
        x = _EW_POINTS[id]
        s = radical_eval(sin_pi_rational(x), wctx)
        return (s / pi.mul_fraction(x)).rescale(ctx.scale)
    if id in ("wallis", "viete", "nested-exponent"):
        return (pi / 2).rescale(ctx.scale)
    if id in ("odd-square", "euler-pi4"):
        return (pi / 4).rescale(ctx.scale)
    if id == "euler-zeta2":
        return (reference_pi_power(2, wctx) / 6).rescale(ctx.scale)
    raise UnknownId(f"no limit for {id!r}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------


def golden_ratio_check(
    n: int, ctx: PrecisionContext, correction: str = "first_order"
) -> BigFixed:
    """Residual |3 - (4 pi^2 / 25) prod(1 - 1/(25 m^2))^2 - phi|, oracle pi."""
    wctx = _work_context(ctx, n)
    prod = euler_wallis(Fraction(1, 5), n, correction, wctx)
    p_w = prod.value.rescale(wctx.scale)
    pi2 = reference_pi_power(2, wctx)
    phi = radical_eval(golden_ratio(), wctx)
    three = wctx.from_int(3)
    residual = three - (pi2 * p_w * p_w).mul_fraction(Fraction(4, 25)) - phi
    return abs(residual).rescale(ctx.scale)


def functional_equation_check(x: Fraction, ctx: PrecisionContext | None = None) -> BigFixed:
    """|x h(x) + (x+1) h(x+1)| for h = sin(pi t)/(pi t), via exact table values.

    Reduces to |sin(pi x) + sin(pi (x+1))|, identically zero up to radical
    evaluation ulps; both x and x+1 must be table angles.
    """
    x = Fraction(x)
    if x.denominator == 1:
        raise PoleAtInteger("functional equation check requires non-integer x")
    if ctx is None:
        ctx = PrecisionContext(50)
    a = radical_eval(sin_pi_rational(x), ctx)
    b = radical_eval(sin_pi_rational(x + 1), ctx)
    return abs(a + b)
