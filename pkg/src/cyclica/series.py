"""Truncated power series and the coefficient tables C_k, c_k.

``C_k`` are the Taylor coefficients of Gamma(1 + z), obtained by
exponentiating ``-gamma z + sum_{k>=2} (-1)^k zeta(k) z^k / k``.
``c_k`` are the coefficients of ``exp(sum_k (k-1)! C_k z^k)``, the
correction terms of C(x) in powers of 1/log log log x.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation
from .precision import DEFAULT_PREC, PrecReal, euler_gamma, zeta

MAX_DEGREE = 64
# extra working bits per degree; the c_k grow like (k-1)! and exp cancels
GUARD_PER_DEGREE = 16


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients ``a_0..a_N`` of a power series modulo ``z**(N+1)``."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least one coefficient")

    @classmethod
    def from_values(cls, values, prec=DEFAULT_PREC):
        return cls(tuple(v if isinstance(v, PrecReal) else PrecReal(v, prec) for v in values))

    @classmethod
    def constant(cls, value, degree, prec=DEFAULT_PREC):
        return cls.from_values([value] + [0] * degree, prec)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def prec(self):
        return min(c.prec for c in self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other):
        _check_degrees(self, other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        _check_degrees(self, other)
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return ps_mul(self, other)
        return TruncatedSeries(tuple(a * other for a in self.coeffs))

    def derivative_coeffs(self):
        """``k * a_k`` for ``k = 1..N``; the coefficients of f' shifted down by one."""
        return [a * k for k, a in enumerate(self.coeffs) if k]

    def evaluate(self, z):
        acc = self.coeffs[-1]
        for a in reversed(self.coeffs[:-1]):
            acc = acc * z + a
        return acc


def _check_degrees(f, g):
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")


def ps_mul(f, g):
    """Cauchy product truncated at the common degree."""
    _check_degrees(f, g)
    a, b = f.coeffs, g.coeffs
    n = f.degree
    out = []
    for j in range(n + 1):
        acc = a[0] * b[j]
        for i in range(1, j + 1):
            acc = acc + a[i] * b[j - i]
        out.append(acc)
    return TruncatedSeries(tuple(out))


def ps_exp(f):
    """exp(f) for f with zero constant term, via ``n g_n = sum_k k f_k g_(n-k)``."""
    a = f.coeffs
    if a[0] != 0:
        raise ValueError("ps_exp requires a zero constant term")
    prec = f.prec
    g = [PrecReal(1, prec)]
    for n in range(1, f.degree + 1):
        acc = PrecReal(0, prec)
        for k in range(1, n + 1):
            acc = acc + a[k] * g[n - k] * k
        g.append(acc / n)
    return TruncatedSeries(tuple(g))


def ps_log(f):
    """log(f) for f with constant term 1, via ``f g' = f'``."""
    a = f.coeffs
    if a[0] != 1:
        raise ValueError("ps_log requires constant term 1")
    prec = f.prec
    g = [PrecReal(0, prec)]
    for n in range(1, f.degree + 1):
        # n g_n = n a_n - sum_{k=1}^{n-1} k g_k a_(n-k)
        acc = a[n] * n
        for k in range(1, n):
            acc = acc - g[k] * a[n - k] * k
        g.append(acc / n)
    return TruncatedSeries(tuple(g))


def _working_prec(n, prec):
    return prec + GUARD_PER_DEGREE * n


def _check_degree(n, max_degree):
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    if n > max_degree:
        raise ValueError(f"degree {n} exceeds the cap {max_degree}")


def log_gamma_series(n, prec):
    """``log Gamma(1 + z) = -gamma z + sum_{k=2}^n (-1)^k zeta(k) z^k / k``."""
    coeffs = [PrecReal(0, prec), -euler_gamma(prec)]
    for k in range(2, n + 1):
        term = zeta(k, prec) / k
        coeffs.append(term if k % 2 == 0 else -term)
    return TruncatedSeries(tuple(coeffs[: n + 1]))


def _gamma_taylor_work(n, work):
    return ps_exp(log_gamma_series(n, work))


def gamma_taylor(n, prec=DEFAULT_PREC, *, max_degree=MAX_DEGREE):
    """Taylor coefficients ``[C_1, ..., C_n]`` of Gamma(1 + z) at z = 0."""
    _check_degree(n, max_degree)
    series = _gamma_taylor_work(n, _working_prec(n, prec))
    return [PrecReal(c, prec) for c in series.coeffs[1:]]


@dataclass(frozen=True)
class CoefficientTable:
    N: int
    precision_bits: int
    C: tuple  # C_1..C_N
    c: tuple  # c_1..c_N

    def rows(self, digits=None):
        return [
            {"k": k, "C_k": Ck.to_decimal(digits), "c_k": ck.to_decimal(digits)}
            for k, (Ck, ck) in enumerate(zip(self.C, self.c), start=1)
        ]

    def to_csv(self, digits=None):
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["k", "C_k", "c_k"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows(digits))
        return buf.getvalue()

    def to_json(self, digits=None):
        return json.dumps(
            {"N": self.N, "precision_bits": self.precision_bits, "rows": self.rows(digits)},
            indent=2,
        )


def check_table(table):
    """Raise :class:`InvariantViolation` unless signs alternate and |c_k| >= (k-1)!/k."""
    for k, (Ck, ck) in enumerate(zip(table.C, table.c), start=1):
        want = -1 if k % 2 else 1
        if Ck.sign != want:
            raise InvariantViolation(f"C_{k} has sign {Ck.sign}, expected {want}")
        if ck.sign != want:
            raise InvariantViolation(f"c_{k} has sign {ck.sign}, expected {want}")
        if k >= 2 and abs(ck.to_fraction()) < Fraction(math.factorial(k - 1), k):
            raise InvariantViolation(f"|c_{k}| = {abs(ck)} is below (k-1)!/k")


def cyclic_coeffs(n, prec=DEFAULT_PREC, *, max_degree=MAX_DEGREE, check=True):
    """C_1..C_n and c_1..c_n at ``prec`` bits, with invariants verified.

    Internally works at ``prec + 16 n`` bits; the factorial weights (k-1)!
    are exact integers multiplied in before any rounding.
    """
    _check_degree(n, max_degree)
    work = _working_prec(n, prec)
    gamma_series = _gamma_taylor_work(n, work)
    weighted = [PrecReal(0, work)]
    for k in range(1, n + 1):
        weighted.append(gamma_series[k] * math.factorial(k - 1))
    c_series = ps_exp(TruncatedSeries(tuple(weighted)))
    table = CoefficientTable(
        N=n,
        precision_bits=prec,
        C=tuple(PrecReal(v, prec) for v in gamma_series.coeffs[1:]),
        c=tuple(PrecReal(v, prec) for v in c_series.coeffs[1:]),
    )
    if check:
        check_table(table)
    return table
