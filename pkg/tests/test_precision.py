from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from cyclica.precision import (
    PrecReal,
    bernoulli,
    default_digits,
    euler_gamma,
    pi_const,
    power_of_two,
    zeta,
)


def _mp(value, bits):
    mpmath.mp.prec = bits
    return mpmath.mpf(value.to_fraction().numerator) / value.to_fraction().denominator


def _machin_pi(bits):
    # pi = 16 atan(1/5) - 4 atan(1/239), exact rationals truncated past 2^-bits
    def atan_inv(k):
        total, term, n, sign = Fraction(0), Fraction(1, k), 1, 1
        while term > Fraction(1, 2 ** (bits + 8)):
            total += sign * term / n
            term /= k * k
            n += 2
            sign = -sign
        return total

    return 16 * atan_inv(5) - 4 * atan_inv(239)


def _harmonic_gamma(bits):
    # independent route: H_n - log n - 1/(2n) + 1/(12n^2) - 1/(120n^4) + 1/(252n^6), n = 2^20
    n = 2**20
    mpmath.mp.prec = bits + 40
    H = mpmath.fsum(mpmath.mpf(1) / k for k in range(1, n + 1))
    N = mpmath.mpf(n)
    return H - mpmath.log(N) - 1 / (2 * N) + 1 / (12 * N**2) - 1 / (120 * N**4) + 1 / (252 * N**6)


def test_pi_against_machin():
    assert abs(pi_const(256).to_fraction() - _machin_pi(256)) < Fraction(1, 2**250)


def test_gamma_against_harmonic_sum():
    # truncation error of the oracle is ~1/(240 n^8) ~ 2^-168
    mpmath.mp.prec = 240
    diff = _mp(euler_gamma(256), 256) - _harmonic_gamma(200)
    assert abs(diff) < mpmath.mpf(2) ** -160


def test_gamma_against_mpmath():
    mpmath.mp.prec = 600
    assert abs(_mp(euler_gamma(512), 600) - mpmath.euler) < mpmath.mpf(2) ** -505


@pytest.mark.parametrize("k", [2, 3, 4, 5, 7, 10, 20, 31])
def test_zeta_against_mpmath(k):
    mpmath.mp.prec = 300
    assert abs(_mp(zeta(k, 256), 300) - mpmath.zeta(k)) < mpmath.mpf(2) ** -250


def test_zeta2_is_pi_squared_over_six():
    p = pi_const(256)
    assert abs((zeta(2, 256) * 6 - p * p).to_fraction()) < Fraction(1, 2**120)


def test_zeta_rejects():
    for bad in (1, 0, -3, 2.5):
        with pytest.raises(ValueError):
            zeta(bad, 128)


def test_bernoulli():
    assert [bernoulli(n) for n in range(9)] == [
        Fraction(1), Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42), 0, Fraction(-1, 30)
    ]
    assert bernoulli(20) == Fraction(-174611, 330)


@settings(max_examples=100)
@given(st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10**40).filter(lambda f: Fraction(1, 10) < f < 10))
def test_exp_log_roundtrip(f):
    v = PrecReal(f, 128)
    back = v.log().exp()
    assert abs(back - v) <= v.ulp() * 4


@settings(max_examples=200)
@given(a=st.fractions(), b=st.fractions())
def test_arithmetic_correctly_rounded(a, b):
    prec = 113
    x, y = PrecReal(a, prec), PrecReal(b, prec)
    fx, fy = x.to_fraction(), y.to_fraction()
    for got, exact in ((x + y, fx + fy), (x - y, fx - fy), (x * y, fx * fy)):
        if exact:
            assert abs(got.to_fraction() - exact) <= abs(exact) / 2**prec
        else:
            assert got == 0
    if fy:
        q = fx / fy
        assert abs((x / y).to_fraction() - q) <= abs(q) / 2**prec


def test_comparisons_are_exact():
    a = PrecReal(Fraction(1, 3), 64)
    assert a < Fraction(1, 3) or a > Fraction(1, 3)
    assert PrecReal(5, 64) == 5 and PrecReal("0.5", 64) == Fraction(1, 2)
    assert -PrecReal(Fraction(1, 3), 256) == PrecReal(Fraction(-1, 3), 256)


def test_negation_keeps_precision():
    g = euler_gamma(256)
    assert (-g).prec == 256 and (-g).to_fraction() == -g.to_fraction()


def test_decimal_io():
    assert PrecReal.from_decimal("1_000.5", 64) == Fraction(2001, 2)
    assert power_of_two(-10, 64) == Fraction(1, 1024)
    assert default_digits(256) == 76
    assert PrecReal(Fraction(1, 3), 128).to_decimal(5) == "0.33333"
    assert pi_const(256).to_decimal(31) == "3.141592653589793238462643383280"


def test_gamma_examples():
    assert euler_gamma(64).to_decimal(16) == "0.5772156649015329"
    assert euler_gamma(256).value == euler_gamma(256).value
    coarse = euler_gamma(256).round_to(64)
    assert abs(coarse - euler_gamma(64)) <= euler_gamma(64).ulp() * 2


def test_zeta_examples():
    assert zeta(2, 128).to_decimal(17) == "1.6449340668482264"
    assert zeta(3, 128).to_decimal(17) == "1.2020569031595943"
    assert (zeta(64, 128) - 1).to_fraction() < Fraction(1, 2**63)


def test_pi_examples():
    assert pi_const(64).to_decimal(18).startswith("3.1415926535897932")
    assert pi_const(256).value == pi_const(256).value
    assert (pi_const(128) ** 2 / 12).to_decimal(16) == "0.8224670334241132"
    assert abs(((zeta(2, 128) / 2) - pi_const(128) ** 2 / 12).to_fraction()) < Fraction(1, 2**120)


@pytest.mark.parametrize("bits", [64, 128, 256])
def test_constants_refine(bits):
    # the leading bits of a constant stay put when precision grows
    for f in (euler_gamma, pi_const, lambda p: zeta(3, p)):
        lo, hi = f(bits), f(bits + 128)
        assert abs(lo - hi.round_to(bits)) <= lo.ulp()


def test_mixed_precision_result():
    assert (PrecReal(1, 64) + PrecReal(1, 256)).prec == 64
    with pytest.raises(ValueError):
        PrecReal(1, 32)
