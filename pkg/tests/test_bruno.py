"""Composition coefficients, trig factors, symbolic prefactors, evaluation."""

import math
from fractions import Fraction

import pytest

from pi_kiln import numerics
from pi_kiln.bruno import (
    bk_eval,
    bk_symbolic,
    faa_coefficient,
    render_bk,
    trig_factor,
)
from pi_kiln.errors import PoleAtInteger, SingularPoint
from pi_kiln.exact import multinomial
from pi_kiln.numerics import PrecisionContext
from pi_kiln.partitions import PartitionVector, enumerate_constrained

from _oracles import FD_PARAMS, kth_derivative_cauchy, kth_derivative_fd

CTX = PrecisionContext(30)


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------


def test_faa_k1():
    # oracle: (1/f)' = -f'/f^2, so the single k=1 vector carries -1
    pv = PartitionVector(1, (1,))
    assert faa_coefficient(pv) == Fraction(-1)


def test_faa_k2():
    assert faa_coefficient(PartitionVector(2, (2, 0))) == Fraction(1)
    assert faa_coefficient(PartitionVector(2, (0, 1))) == Fraction(-1, 2)


def test_faa_multinomial_identity():
    # C = (-1)^(k-p0) * M / prod (i!)^p_i with M the multinomial coefficient
    for k in range(0, 10):
        for pv in enumerate_constrained(k):
            denom = 1
            for i, m in enumerate(pv.p, start=1):
                denom *= math.factorial(i) ** m
            expected = Fraction((-1) ** (k - pv.p0) * multinomial(pv.p), denom)
            assert faa_coefficient(pv) == expected


# ---------------------------------------------------------------------------
# trig factors
# ---------------------------------------------------------------------------


def test_trig_factor_cycle():
    assert trig_factor(0) == trig_factor(4)
    assert (trig_factor(0).sign, trig_factor(0).s_exp, trig_factor(0).c_exp) == (1, 1, 0)
    assert (trig_factor(1).sign, trig_factor(1).c_exp) == (1, 1)
    assert trig_factor(2).sign == -1 and trig_factor(2).s_exp == 1
    assert trig_factor(3).sign == -1 and trig_factor(3).c_exp == 1


def test_trig_factor_matches_numeric_derivative():
    # d^i/dx^i sin(pi x) = pi^i * (factor evaluated at x); check at x = 0.3
    x = 0.3
    s, c = math.sin(math.pi * x), math.cos(math.pi * x)
    h = 0.03  # large enough that 1/h^i roundoff amplification stays harmless
    for i in range(0, 8):
        f = trig_factor(i)
        predicted = f.sign * s**f.s_exp * c**f.c_exp
        stencil = math.fsum(
            (-1) ** j * math.comb(i, j) * math.sin(math.pi * (x + (i / 2 - j) * h))
            for j in range(i + 1)
        )
        numeric = stencil / (math.pi * h) ** i
        assert abs(numeric - predicted) < 5e-2, f"i={i}"
    # i = 6 reduces to residue 2: -sin
    f6 = trig_factor(6)
    assert (f6.sign, f6.s_exp, f6.c_exp) == (-1, 1, 0)


# ---------------------------------------------------------------------------
# symbolic golden forms
# ---------------------------------------------------------------------------


def test_b0_golden():
    sym = bk_symbolic(0)
    assert sym.even_part == (Fraction(1),)
    assert sym.odd_part == tuple()
    assert render_bk(sym) == "1 / s"


def test_b1_golden():
    sym = bk_symbolic(1)
    assert sym.even_part == tuple()
    assert sym.odd_part == (Fraction(-1),)
    assert render_bk(sym) == "-c / s^2"


def test_b2_golden():
    sym = bk_symbolic(2)
    assert sym.even_part == (Fraction(1), Fraction(0), Fraction(-1, 2))
    assert sym.odd_part == tuple()
    assert render_bk(sym) == "(2 - s^2) / (2 s^3)"


def test_b2_reduction_matches_two_term_form():
    # cos^2/s^3 + (1/2)(1/s) with c^2 -> 1 - s^2 gives (1 - s^2/2)/s^3
    sym = bk_symbolic(2)
    for s in (0.3, 0.5, 0.9):
        two_term = (1 - s * s) / s**3 + 0.5 / s
        got = sum(float(q) * s**j for j, q in enumerate(sym.even_part)) / s**3
        assert abs(two_term - got) < 1e-12


def test_c_degree_never_exceeds_one():
    # the invariant behind the (A, B) split: exercised for k <= 10
    for k in range(0, 11):
        sym = bk_symbolic(k)
        assert len(sym.even_part) <= k + 1
        assert len(sym.odd_part) <= k + 1
        assert sym.denominator_exponent == k + 1


def test_term_count_is_partition_number():
    # indirectly: symbolic sum built from exactly P(k) vectors
    for k, pk in enumerate((1, 1, 2, 3, 5, 7, 11, 15, 22)):
        assert len(enumerate_constrained(k)) == pk


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def test_bk_eval_b0_at_half():
    v = bk_eval(0, Fraction(1, 2), CTX)
    assert v == CTX.one()


def test_bk_eval_b2_at_quarter():
    # (2 - 1/2) / (2 (sqrt2/2)^3) = 3 sqrt2 / 2
    v = bk_eval(2, Fraction(1, 4), CTX)
    expected = numerics.sqrt(CTX.from_int(2)) * 3 / 2
    assert abs(v - expected) <= CTX.ulp() * 64
    assert abs(v.to_float() - 2.1213203435596424) < 1e-14


def test_bk_eval_singular_point():
    with pytest.raises(SingularPoint):
        bk_eval(1, Fraction(1, 2), CTX)  # cos(pi/2) = 0


def test_bk_eval_integer_pole():
    with pytest.raises(PoleAtInteger):
        bk_eval(0, Fraction(2), CTX)


def test_bk_eval_matches_float_formula():
    for k in range(0, 9):
        for x in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 6)):
            sym = bk_symbolic(k)
            s = math.sin(math.pi * float(x))
            c = math.cos(math.pi * float(x))
            assert abs(bk_eval(k, x, CTX).to_float() - sym.eval_float(s, c)) < 1e-9


# ---------------------------------------------------------------------------
# derivative oracles
# ---------------------------------------------------------------------------


def test_fd_oracle_cross_checked_by_hand_derivatives():
    # hand-derived closed forms (chain rule on 1/sin): k=1 and k=2
    for x in (0.25, 1 / 3, 1 / 6):
        s, c = math.sin(math.pi * x), math.cos(math.pi * x)
        d1 = -math.pi * c / s**2
        d2 = math.pi**2 * (2 - s * s) / s**3
        assert abs(kth_derivative_fd(x, 1) - d1) / abs(d1) < 1e-9
        assert abs(kth_derivative_fd(x, 2) - d2) / abs(d2) < 1e-9
        assert abs(kth_derivative_cauchy(x, 1) - d1) / abs(d1) < 1e-10
        assert abs(kth_derivative_cauchy(x, 2) - d2) / abs(d2) < 1e-10


def test_fd_and_cauchy_oracles_agree():
    for k in FD_PARAMS:
        for x in (0.25, 1 / 3, 1 / 6):
            a = kth_derivative_fd(x, k)
            b = kth_derivative_cauchy(x, k)
            assert abs(a - b) / abs(b) < 1e-5, f"k={k} x={x}"


@pytest.mark.parametrize("x", [Fraction(1, 4), Fraction(1, 3), Fraction(1, 6)])
def test_bk_eval_matches_derivative_oracle(x):
    # B_k(x) = (d/dx)^k [1/sin(pi x)] / (pi^k k!)
    for k in range(1, 9):
        oracle = kth_derivative_cauchy(float(x), k) / (math.pi**k * math.factorial(k))
        got = bk_eval(k, x, CTX).to_float()
        assert abs(got - oracle) / abs(oracle) < 1e-5, f"k={k}"
        if k in FD_PARAMS:
            fd = kth_derivative_fd(float(x), k) / (math.pi**k * math.factorial(k))
            assert abs(got - fd) / abs(fd) < 1e-5, f"fd k={k}"
