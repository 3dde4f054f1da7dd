"""Arbitrary-precision reals and the constants gamma, pi, zeta(k).

:class:`PrecReal` is an immutable binary floating-point value carrying its
own precision. Every operation rounds to nearest (ties to even) at the
minimum precision of its operands. The underlying arithmetic is MPFR via
gmpy2, which gives correctly rounded add/sub/mul/div/sqrt/exp/log.

The constants are computed here rather than taken from MPFR:

* Euler's constant from harmonic numbers plus an Euler--Maclaurin tail,
* zeta(k) from a partial sum plus an Euler--Maclaurin tail,
* pi from the Gauss--Legendre arithmetic-geometric mean iteration.

Each works at ``prec + 32`` bits and rounds once at the end.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from threading import Lock

import gmpy2
from gmpy2 import mpfr, mpq, mpz

MIN_PREC = 64
DEFAULT_PREC = 256
GUARD_BITS = 32


@lru_cache(maxsize=None)
def _ctx(prec):
    return gmpy2.context(precision=prec, round=gmpy2.RoundToNearest)


def _to_mpfr(value, prec):
    ctx = _ctx(prec)
    if isinstance(value, PrecReal):
        return ctx.plus(value.value)
    if isinstance(value, Fraction):
        return ctx.div(mpz(value.numerator), mpz(value.denominator))
    if isinstance(value, str):
        return mpfr(value.replace("_", ""), prec)
    if isinstance(value, (int, type(mpz(0)))):
        return mpfr(mpz(value), prec)
    if isinstance(value, type(mpq(0))):
        return ctx.div(mpfr(value.numerator), mpfr(value.denominator))
    if isinstance(value, (float, type(mpfr(0)))):
        return ctx.plus(mpfr(value))
    raise TypeError(f"cannot convert {type(value).__name__} to PrecReal")


class PrecReal:
    """Binary floating-point number with an explicit precision in bits.

    Parameters
    ----------
    value : int, float, str, Fraction, gmpy2.mpfr or PrecReal
        Strings are parsed as decimal literals and correctly rounded.
    prec : int
        Mantissa precision in bits, at least ``MIN_PREC``.
    """

    __slots__ = ("value", "prec")

    def __init__(self, value=0, prec=DEFAULT_PREC):
        if prec < MIN_PREC:
            raise ValueError(f"precision must be >= {MIN_PREC} bits, got {prec}")
        self.value = _to_mpfr(value, prec)
        self.prec = prec

    @classmethod
    def _wrap(cls, value, prec):
        obj = cls.__new__(cls)
        obj.value = value
        obj.prec = prec
        return obj

    # -- structure ---------------------------------------------------------
    @property
    def sign(self):
        return -1 if self.value < 0 else (1 if self.value > 0 else 0)

    @property
    def mantissa(self):
        """Absolute integer mantissa ``m`` with ``|self| = m * 2**exponent``."""
        return abs(int(self.value.as_mantissa_exp()[0]))

    @property
    def exponent(self):
        return int(self.value.as_mantissa_exp()[1])

    def ulp(self):
        """Unit in the last place, as a PrecReal at the same precision."""
        if self.value == 0:
            e = -self.prec
        else:
            e = int(gmpy2.get_exp(self.value)) - self.prec
        return PrecReal._wrap(_ctx(self.prec).mul_2exp(mpfr(1), e), self.prec)

    def to_fraction(self):
        num, den = self.value.as_integer_ratio()
        return Fraction(int(num), int(den))

    def round_to(self, prec):
        return PrecReal(self, prec)

    def __float__(self):
        return float(self.value)

    def __int__(self):
        return int(self.value)

    def __bool__(self):
        return self.value != 0

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PrecReal):
            prec = min(self.prec, other.prec)
            return other.value, prec
        return _to_mpfr(other, self.prec), self.prec

    def _binary(self, other, op, reflected=False):
        try:
            b, prec = self._coerce(other)
        except TypeError:
            return NotImplemented
        a = self.value
        if reflected:
            a, b = b, a
        return PrecReal._wrap(getattr(_ctx(prec), op)(a, b), prec)

    def __add__(self, other):
        return self._binary(other, "add")

    def __radd__(self, other):
        return self._binary(other, "add", True)

    def __sub__(self, other):
        return self._binary(other, "sub")

    def __rsub__(self, other):
        return self._binary(other, "sub", True)

    def __mul__(self, other):
        return self._binary(other, "mul")

    def __rmul__(self, other):
        return self._binary(other, "mul", True)

    def __truediv__(self, other):
        return self._binary(other, "div")

    def __rtruediv__(self, other):
        return self._binary(other, "div", True)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return PrecReal._wrap(_ctx(self.prec).pow(self.value, k), self.prec)

    # bare -x / abs(x) on mpfr round to the global context, hence ctx here
    def __neg__(self):
        return PrecReal._wrap(_ctx(self.prec).minus(self.value), self.prec)

    def __pos__(self):
        return self

    def __abs__(self):
        return PrecReal._wrap(_ctx(self.prec).abs(self.value), self.prec)

    def exp(self):
        return PrecReal._wrap(_ctx(self.prec).exp(self.value), self.prec)

    def log(self):
        if self.value <= 0:
            raise ValueError("log of non-positive value")
        return PrecReal._wrap(_ctx(self.prec).log(self.value), self.prec)

    def sqrt(self):
        if self.value < 0:
            raise ValueError("sqrt of negative value")
        return PrecReal._wrap(_ctx(self.prec).sqrt(self.value), self.prec)

    # -- comparison (exact) ------------------------------------------------
    def _cmp_value(self, other):
        if isinstance(other, PrecReal):
            return other.value
        if isinstance(other, Fraction):
            return mpq(other.numerator, other.denominator)
        if isinstance(other, int):
            return mpz(other)
        return other

    def __eq__(self, other):
        try:
            return self.value == self._cmp_value(other)
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self.value < self._cmp_value(other)

    def __le__(self, other):
        return self.value <= self._cmp_value(other)

    def __gt__(self, other):
        return self.value > self._cmp_value(other)

    def __ge__(self, other):
        return self.value >= self._cmp_value(other)

    def __hash__(self):
        return hash(self.value)

    # -- decimal I/O -------------------------------------------------------
    @classmethod
    def from_decimal(cls, text, prec=DEFAULT_PREC):
        return cls(str(text), prec)

    def to_decimal(self, digits=None):
        """Render with ``digits`` significant decimal digits (round-to-nearest).

        Plain positional notation is used for moderate exponents, otherwise
        ``d.ddd...e+XX``.
        """
        if digits is None:
            digits = default_digits(self.prec)
        digits = max(1, int(digits))
        if self.value == 0:
            return "0." + "0" * (digits - 1) if digits > 1 else "0"
        mant, exp10, _ = self.value.digits(10, digits)
        neg = mant.startswith("-")
        mant = mant.lstrip("-")
        sign = "-" if neg else ""
        point = exp10  # value = 0.mant * 10**exp10
        if -6 < point <= digits:
            if point <= 0:
                body = "0." + "0" * (-point) + mant
            else:
                body = mant[:point] + ("." + mant[point:] if point < len(mant) else "")
            return sign + body
        body = mant[0] + ("." + mant[1:] if len(mant) > 1 else "")
        return f"{sign}{body}e{point - 1:+d}"

    def __str__(self):
        return self.to_decimal()

    def __repr__(self):
        return f"PrecReal('{self.to_decimal()}', prec={self.prec})"


def default_digits(prec):
    """Decimal digits guaranteed by ``prec`` bits, minus two for safety."""
    return max(1, math.ceil(prec * 0.30103) - 2)


def exp(x):
    return x.exp()


def log(x):
    return x.log()


def sqrt(x):
    return x.sqrt()


def power_of_two(e, prec=DEFAULT_PREC):
    return PrecReal._wrap(_ctx(prec).mul_2exp(mpfr(1), e), prec)


# -- Bernoulli numbers ---------------------------------------------------

_bern_lock = Lock()
_bern_cache = [Fraction(1)]  # B_0, B_2, B_4, ... (even index only)


def _tangent_numbers(n):
    # Brent--Harvey in-place recurrence; integer arithmetic only.
    t = [0] * (n + 1)
    t[1] = 1
    for k in range(2, n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t


def bernoulli_even(k):
    """Exact Bernoulli number B_{2k} as a Fraction."""
    if k < 0:
        raise ValueError("k must be non-negative")
    with _bern_lock:
        if k >= len(_bern_cache):
            n = max(k, 2 * (len(_bern_cache) - 1), 16)
            t = _tangent_numbers(n)
            cache = [Fraction(1)]
            for j in range(1, n + 1):
                four = 4**j
                b = Fraction(2 * j * t[j], four * (four - 1))
                cache.append(b if j % 2 == 1 else -b)
            _bern_cache[:] = cache
        return _bern_cache[k]


def bernoulli(n):
    """Exact Bernoulli number B_n with the B_1 = -1/2 convention."""
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    return bernoulli_even(n // 2)


# -- constants -----------------------------------------------------------

def _euler_maclaurin_cut(work):
    return work // 3 + 16


@lru_cache(maxsize=64)
def euler_gamma(prec=DEFAULT_PREC):
    """Euler--Mascheroni constant, error below ``2**(4 - prec)``.

    Uses ``gamma = H_n - log n - 1/(2n) + sum_k B_2k / (2k n^2k)``; the
    neglected remainder is smaller than the first omitted term, and the
    loop stops once terms fall under ``2**-work``.
    """
    if prec < MIN_PREC:
        raise ValueError(f"precision must be >= {MIN_PREC} bits")
    work = prec + GUARD_BITS
    ctx = _ctx(work)
    n = _euler_maclaurin_cut(work)
    harmonic = sum((Fraction(1, j) for j in range(1, n + 1)), Fraction(0))
    acc = ctx.div(mpz(harmonic.numerator), mpz(harmonic.denominator))
    acc = ctx.sub(acc, ctx.log(n))
    acc = ctx.sub(acc, ctx.div(1, 2 * n))
    tol = Fraction(1, 2**work)
    nsq = n * n
    npow = nsq
    k = 1
    while True:
        term = bernoulli_even(k) / (2 * k * npow)
        if abs(term) < tol:
            break
        acc = ctx.add(acc, _to_mpfr(term, work))
        k += 1
        npow *= nsq
    return PrecReal(PrecReal._wrap(acc, work), prec)


@lru_cache(maxsize=512)
def zeta(k, prec=DEFAULT_PREC):
    """Riemann zeta at an integer ``k >= 2``, error below ``2**(4 - prec)``.

    Partial sum to ``n - 1`` plus the Euler--Maclaurin tail
    ``n^(1-k)/(k-1) + n^-k/2 + sum_j B_2j/(2j)! (k)_(2j-1) n^(-k-2j+1)``.
    For real ``k`` the remainder is bounded by the first omitted term.
    """
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"zeta requires an integer k >= 2, got {k!r}")
    if prec < MIN_PREC:
        raise ValueError(f"precision must be >= {MIN_PREC} bits")
    work = prec + GUARD_BITS
    ctx = _ctx(work)
    n = _euler_maclaurin_cut(work)
    head = ctx.fsum([ctx.div(1, mpz(j) ** k) for j in range(1, n)])
    tail = Fraction(1, (k - 1) * n ** (k - 1)) + Fraction(1, 2 * n**k)
    tol = Fraction(1, 2**work)
    rising = k  # (k)_(2j-1)
    fact = 2  # (2j)!
    npow = n ** (k + 1)
    j = 1
    while True:
        term = bernoulli_even(j) * rising / (fact * npow)
        if abs(term) < tol:
            break
        tail += term
        rising *= (k + 2 * j - 1) * (k + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        npow *= n * n
        j += 1
    total = ctx.add(head, _to_mpfr(tail, work))
    return PrecReal(PrecReal._wrap(total, work), prec)


@lru_cache(maxsize=64)
def pi_const(prec=DEFAULT_PREC):
    """pi by the Gauss--Legendre AGM iteration at ``prec + 32`` bits."""
    if prec < MIN_PREC:
        raise ValueError(f"precision must be >= {MIN_PREC} bits")
    work = prec + GUARD_BITS
    ctx = _ctx(work)
    a = mpfr(1, work)
    b = ctx.sqrt(ctx.div(1, 2))
    t = ctx.div(1, 4)
    p = 1
    # |a - b| squares each step; once it is below 2**-(work/2 + 4) one more
    # step reaches the rounding floor, where it would otherwise stall.
    eps = ctx.mul_2exp(mpfr(1), -(work // 2 + 4))
    while True:
        done = abs(ctx.sub(a, b)) < eps
        an = ctx.div(ctx.add(a, b), 2)
        b = ctx.sqrt(ctx.mul(a, b))
        d = ctx.sub(a, an)
        t = ctx.sub(t, ctx.mul(p, ctx.mul(d, d)))
        a = an
        p *= 2
        if done:
            break
    s = ctx.add(a, b)
    val = ctx.div(ctx.mul(s, s), ctx.mul(4, t))
    return PrecReal(PrecReal._wrap(val, work), prec)


@lru_cache(maxsize=64)
def exp_neg_gamma(prec=DEFAULT_PREC):
    """e^-gamma, the Mertens product constant."""
    g = euler_gamma(prec + GUARD_BITS)
    return PrecReal((-g).exp(), prec)
