import math
from fractions import Fraction

import gmpy2
import pytest

from cyclica.census import factorize, totient
from cyclica.diagnostics import (
    MERTENS_CONSTANT,
    classify_standard,
    lemma3_residual,
    lemma3_rows,
    mertens_residual,
    rows_to_csv,
    sk_census,
    standard_threshold,
)
from cyclica.errors import CapacityError
from cyclica.asymptotic import make_scale


def test_mertens_small():
    r = mertens_residual(10)
    assert r.observed.to_decimal(6) == "1.17619"
    assert r.reference.to_decimal(5) == "0.83403"
    assert r.residual.to_decimal(5) == "0.34216"
    assert r.residual == r.observed - r.reference
    assert abs(mertens_residual(3).observed.to_fraction() - Fraction(5, 6)) < Fraction(1, 2**120)


@pytest.mark.slow
def test_mertens_approaches_constant():
    res = [float(mertens_residual(10**e).residual) for e in (4, 6, 8)]
    limit = float(MERTENS_CONSTANT)
    assert all(abs(a - b) < 0.02 for a, b in zip(res, res[1:]))
    assert abs(res[0] - limit) >= abs(res[1] - limit) >= abs(res[2] - limit) - 1e-6
    assert abs(res[2] - 0.26150) < 0.05


def test_lemma3_examples():
    assert abs(lemma3_residual(4, 10).observed.to_fraction() - Fraction(1, 5)) < Fraction(1, 2**120)
    m1 = lemma3_residual(1, 10**6)
    assert m1.observed == mertens_residual(10**6).observed
    rows = lemma3_rows([1, 3, 4, 12], 10**5)
    for r in rows:
        m = r.params["m"]
        assert r.params["phi_m"] == totient(m)
        assert abs(float(r.params["bound_scale"]) - math.log(2 * m) / totient(m)) < 1e-10
        assert r.residual == r.observed - r.reference


def test_threshold_matches_definition():
    for x in (16, 1000, 10**5, 10**6, 10**9):
        q = standard_threshold(x)
        t = math.log(x) / math.log(math.log(x))
        assert math.log(q) <= t + 1e-12 and math.log(q + 1) > t - 1e-12


def test_classify_examples():
    x = 10**6
    assert classify_standard(21, x) == {3}
    assert classify_standard(35, x) == frozenset()
    for p in (2, 3, 7, 9973):
        assert classify_standard(p, x) == frozenset()
    with pytest.raises(ValueError):
        classify_standard(0, x)


def test_containment_sample():
    x = 10**5
    qmax = standard_threshold(x)
    for n in range(1, 20001):
        g = math.gcd(n, totient(n))
        assert all(g % p == 0 for p in classify_standard(n, x, threshold=qmax))


def _second_pass(x, kmax):
    """Per-integer classification from the factorization, no array code."""
    scale = make_scale(x, 128)
    yf = int(gmpy2.floor(scale.y.value))
    zf = int(gmpy2.floor(scale.z.value))
    qmax = standard_threshold(x)
    classes = [set() for _ in range(kmax + 1)]
    for n in range(1, x + 1):
        fac = factorize(n)
        if any(p <= yf for p, _ in fac):
            continue
        classes[0].add(n)
        mid = [(p, e) for p, e in fac if yf < p <= zf]
        if not mid or any(e > 1 for _, e in mid) or len(mid) > kmax:
            continue
        if any(q <= qmax and (q - 1) % p == 0 for p, _ in mid for q, _ in fac):
            classes[len(mid)].add(n)
    return classes


def test_sk_classes_disjoint_and_in_s0():
    x = 10**5
    classes = _second_pass(x, 6)
    for i in range(1, 7):
        assert classes[i] <= classes[0]
        for j in range(i + 1, 7):
            assert not classes[i] & classes[j]
    assert sk_census(x, 6).counts == tuple(len(c) for c in classes)


@pytest.mark.slow
def test_sk_census_dual_implementation_1e6():
    got = sk_census(10**6, 6)
    assert got.counts == tuple(len(c) for c in _second_pass(10**6, 6))
    assert got.pre_asymptotic and got.counts[0] == 10**6
    assert got.counts[5] == got.counts[6] == 0


def test_sk_census_rows_and_limits():
    c = sk_census(1000, 3)
    rows = c.rows()
    assert [r.params["k"] for r in rows] == [0, 1, 2, 3]
    assert all(r.params.get("regime") == "pre-asymptotic" for r in rows)
    assert rows_to_csv(rows).splitlines()[0] == "kind,params,observed,reference,residual"
    with pytest.raises(CapacityError):
        sk_census(10**7 + 1, 3)
    with pytest.raises(ValueError):
        sk_census(10, 3)
