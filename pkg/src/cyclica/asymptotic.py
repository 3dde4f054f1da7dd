"""Scales, prime sums and the two main-term representations of C(x)/x.

A scale is described by lam = log log x and L = log log log x, with the
cut points ``y = lam / (2L)`` and ``z = lam * exp(sqrt(L))``. Real x gives
L around 1 at best, so a *synthetic* scale fixes L directly and drops the
factor x; every value returned here is then a density.

Two densities are compared:

* the truncated expansion ``(e^-gamma / L) (1 + sum_k c_k / L^k)``;
* ``e^-gamma exp(I) / log z`` with
  ``I = int_y^z exp(-lam/t) / (t log t) dt``, evaluated by quadrature either
  in t or after substituting ``u = lam / t``, which turns it into
  ``int_{lam/z}^{lam/y} e^-u / (u (L - log u)) du``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import quadrature
import gmpy2

from .precision import DEFAULT_PREC, GUARD_BITS, PrecReal, _ctx, exp_neg_gamma

DEFAULT_QUAD_TOL = Fraction(1, 2**80)
MIN_X = 16


@dataclass(frozen=True)
class ScalePoint:
    mode: str  # "integer-x" or "synthetic"
    x: int | None
    lam: PrecReal
    L: PrecReal
    y: PrecReal
    z: PrecReal

    @property
    def prec(self):
        return self.L.prec

    @property
    def log_z(self):
        # log z = log(lam) + sqrt(L) = L + sqrt(L)
        return self.L + self.L.sqrt()

    @property
    def pre_asymptotic(self):
        """True when y < 2, i.e. the small-prime interval [2, y] is empty."""
        return self.y < 2

    def describe(self):
        out = {
            "mode": self.mode,
            "L": self.L.to_decimal(20),
            "lambda": self.lam.to_decimal(20),
            "y": self.y.to_decimal(20),
            "z": self.z.to_decimal(20),
        }
        if self.x is not None:
            out["x"] = self.x
        if self.pre_asymptotic:
            out["regime"] = "pre-asymptotic"
        return out


def _finish_scale(mode, x, lam, L, prec):
    y = lam / (L * 2)
    z = lam * L.sqrt().exp()
    return ScalePoint(mode, x, PrecReal(lam, prec), PrecReal(L, prec), PrecReal(y, prec), PrecReal(z, prec))


def make_scale(x, prec=DEFAULT_PREC):
    """Scale for an actual integer ``x >= 16``."""
    if not isinstance(x, int) or x < MIN_X:
        raise ValueError(f"integer scale needs x >= {MIN_X}, got {x!r}")
    work = prec + GUARD_BITS
    lam = PrecReal(x, work + x.bit_length()).log().log().round_to(work)
    return _finish_scale("integer-x", x, lam, lam.log(), prec)


def make_scale_synthetic(L, prec=DEFAULT_PREC):
    """Scale with log log log x fixed at ``L > 0``."""
    work = prec + GUARD_BITS
    L = PrecReal(L, work)
    if not L > 0:
        raise ValueError(f"synthetic scale needs L > 0, got {L}")
    return _finish_scale("synthetic", None, L.exp(), L, prec)


# -- prime sums -----------------------------------------------------------

def _primes_between(scale, primes):
    zfloor = int(gmpy2.floor(scale.z.value))
    if primes.bound < zfloor:
        raise ValueError(f"prime list bound {primes.bound} is below z = {scale.z.to_decimal(12)}")
    yfloor = int(gmpy2.floor(scale.y.value))
    arr = primes.primes
    lo = np.searchsorted(arr, yfloor, side="right")
    hi = np.searchsorted(arr, zfloor, side="right")
    return arr[lo:hi].tolist()


def sigma0(scale, primes):
    """Sum of 1/p over primes y < p <= z, added in ascending order.

    When y < 2 this is every prime up to z.
    """
    ctx = _ctx(scale.prec + GUARD_BITS)
    terms = [ctx.div(1, p) for p in _primes_between(scale, primes)]
    return PrecReal(PrecReal._wrap(ctx.fsum(terms), scale.prec + GUARD_BITS), scale.prec)


def sigma1(scale, primes):
    """Sum of exp(-lam/p)/p over primes y < p <= z."""
    work = scale.prec + GUARD_BITS
    ctx = _ctx(work)
    nlam = ctx.minus(PrecReal(scale.lam, work).value)
    terms = [ctx.div(ctx.exp(ctx.div(nlam, p)), p) for p in _primes_between(scale, primes)]
    return PrecReal(PrecReal._wrap(ctx.fsum(terms), work), scale.prec)


# -- integral representation ---------------------------------------------

def _quad_prec(tol):
    bits = -math.floor(math.log2(float(tol))) if float(tol) > 0 else 200
    return max(128, bits + 48)


def log_integral(scale, quad_tol=DEFAULT_QUAD_TOL, form="u"):
    """The exponent I of the integral main term.

    ``form="u"`` integrates ``e^-u / (u (L - log u))`` over
    ``[lam/z, lam/y]``; ``form="t"`` integrates ``exp(-lam/t) / (t log t)``
    over ``[y, z]``. Both have the same value. Returns ``(I, error_estimate)``.
    """
    prec = _quad_prec(PrecReal(quad_tol, 64))
    ctx = _ctx(prec)
    lam = PrecReal(scale.lam, prec)
    L = PrecReal(scale.L, prec)
    y = PrecReal(scale.y, prec)
    z = PrecReal(scale.z, prec)
    if form == "u":
        Lv = L.value

        def f(u):
            return ctx.div(ctx.exp(ctx.minus(u)), ctx.mul(u, ctx.sub(Lv, ctx.log(u))))

        a, b = lam / z, lam / y
    elif form == "t":
        nlam = ctx.minus(lam.value)

        def f(t):
            return ctx.div(ctx.exp(ctx.div(nlam, t)), ctx.mul(t, ctx.log(t)))

        a, b = y, z
    else:
        raise ValueError(f"unknown integration form {form!r}")
    return quadrature.integrate(f, a, b, quad_tol, prec)


def main_term_integral(scale, quad_tol=DEFAULT_QUAD_TOL, form="u"):
    """``e^-gamma exp(I) / log z``: the integral main term divided by x."""
    value, _ = log_integral(scale, quad_tol, form)
    prec = max(value.prec, scale.prec)
    I = PrecReal(value, prec)
    return PrecReal(exp_neg_gamma(prec) * I.exp() / PrecReal(scale.log_z, prec), scale.prec)


# -- truncated expansion --------------------------------------------------

def eval_expansion(scale, table, N):
    """``(e^-gamma / L) (1 + c_1/L + ... + c_N/L^N)`` by Horner's rule in 1/L.

    The series diverges for every L; large N at small L simply produces the
    large values that come with it.
    """
    if N < 0 or N > table.N:
        raise ValueError(f"N must be in [0, {table.N}], got {N}")
    prec = min(scale.prec, table.precision_bits)
    L = PrecReal(scale.L, prec)
    base = exp_neg_gamma(prec) / L
    if N == 0:
        return base
    w = PrecReal(1, prec) / L
    acc = PrecReal(table.c[N - 1], prec)
    for k in range(N - 1, 0, -1):
        acc = acc * w + table.c[k - 1]
    return base * (acc * w + 1)


@dataclass(frozen=True)
class MainTermReport:
    scale: ScalePoint
    N: int
    series_value: PrecReal
    integral_value: PrecReal
    relative_gap: PrecReal

    FIELDS = ("L", "N", "series_value", "integral_value", "relative_gap")

    def row(self, digits=None):
        return {
            "L": self.scale.L.to_decimal(digits),
            "N": self.N,
            "series_value": self.series_value.to_decimal(digits),
            "integral_value": self.integral_value.to_decimal(digits),
            "relative_gap": self.relative_gap.to_decimal(digits),
        }


def compare_main_terms(scale, table, N, quad_tol=DEFAULT_QUAD_TOL, *, integral_value=None):
    """Relative gap between the truncated expansion and the integral main term.

    Pass ``integral_value`` to reuse one quadrature across several N.
    """
    series_value = eval_expansion(scale, table, N)
    if integral_value is None:
        integral_value = main_term_integral(scale, quad_tol)
    gap = abs(series_value - integral_value) / integral_value
    return MainTermReport(scale, N, series_value, integral_value, gap)


def compare_many(scale, table, Ns, quad_tol=DEFAULT_QUAD_TOL):
    integral = main_term_integral(scale, quad_tol)
    return [compare_main_terms(scale, table, N, integral_value=integral) for N in Ns]


def reports_to_csv(reports, digits=None):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=MainTermReport.FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.row(digits))
    return buf.getvalue()


def reports_to_json(reports, digits=None):
    out = []
    for r in reports:
        row = r.row(digits)
        row["scale"] = r.scale.describe()
        out.append(row)
    return json.dumps(out[0] if len(out) == 1 else out, indent=2)
