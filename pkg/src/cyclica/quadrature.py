"""Globally adaptive Gauss--Legendre quadrature in multiprecision.

Each panel carries a refined estimate (two half-panel Gauss sums) and an
error estimate (distance to the single full-panel sum). The panel with the
largest error is bisected until the summed error estimate falls below the
absolute tolerance.
"""
from __future__ import annotations

import heapq
import math
from functools import lru_cache

from gmpy2 import mpfr

from .errors import QuadratureError
from .precision import PrecReal, _ctx

DEFAULT_ORDER = 20
MAX_PANELS = 20000


@lru_cache(maxsize=32)
def gauss_legendre(order, prec):
    """Nodes and weights on [-1, 1] as tuples of mpfr at ``prec`` bits."""
    ctx = _ctx(prec + 16)
    eps = ctx.mul_2exp(mpfr(1), -(prec + 8))
    nodes, weights = [], []
    for i in range(1, order + 1):
        x = ctx.plus(mpfr(math.cos(math.pi * (i - 0.25) / (order + 0.5))))
        for _ in range(100):
            p0, p1 = mpfr(1), x
            for k in range(2, order + 1):
                p0, p1 = p1, ctx.div(ctx.sub(ctx.mul(2 * k - 1, ctx.mul(x, p1)), ctx.mul(k - 1, p0)), k)
            # P_n'(x) = n (x P_n - P_(n-1)) / (x^2 - 1)
            dp = ctx.div(ctx.mul(order, ctx.sub(ctx.mul(x, p1), p0)), ctx.sub(ctx.mul(x, x), 1))
            dx = ctx.div(p1, dp)
            x = ctx.sub(x, dx)
            if ctx.abs(dx) < eps:
                break
        else:
            raise QuadratureError("Legendre root iteration did not converge")
        w = ctx.div(2, ctx.mul(ctx.sub(1, ctx.mul(x, x)), ctx.mul(dp, dp)))
        out = _ctx(prec)
        nodes.append(out.plus(x))
        weights.append(out.plus(w))
    return tuple(nodes), tuple(weights)


def _gauss(f, a, b, rule, ctx):
    nodes, weights = rule
    half = ctx.div(ctx.sub(b, a), 2)
    mid = ctx.div(ctx.add(a, b), 2)
    terms = [ctx.mul(w, f(ctx.add(mid, ctx.mul(half, x)))) for x, w in zip(nodes, weights)]
    return ctx.mul(half, ctx.fsum(terms))


def integrate(f, a, b, tol, prec, *, order=DEFAULT_ORDER, max_panels=MAX_PANELS):
    """Integrate ``f`` over ``[a, b]`` to absolute error estimate ``<= tol``.

    Parameters
    ----------
    f : callable
        Maps an mpfr abscissa to an mpfr value; evaluated at ``prec`` bits.
    a, b : PrecReal or number
    tol : float, Fraction or PrecReal
        Absolute tolerance, must be positive.
    prec : int
        Working precision in bits.

    Returns
    -------
    (PrecReal, PrecReal)
        The integral and the summed error estimate.
    """
    ctx = _ctx(prec)
    a = PrecReal(a, prec).value
    b = PrecReal(b, prec).value
    tol = PrecReal(tol, prec).value
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    rule = gauss_legendre(order, prec)

    def panel(lo, hi, coarse):
        mid = ctx.div(ctx.add(lo, hi), 2)
        left = _gauss(f, lo, mid, rule, ctx)
        right = _gauss(f, mid, hi, rule, ctx)
        fine = ctx.add(left, right)
        err = ctx.abs(ctx.sub(fine, coarse))
        return (lo, mid, hi, left, right, fine, err)

    first = panel(a, b, _gauss(f, a, b, rule, ctx))
    # heap of (-err, seq, panel); seq keeps ordering deterministic on ties
    heap = [(-first[6], 0, first)]
    total_err = first[6]
    seq = 1
    while total_err > tol:
        if len(heap) >= max_panels:
            raise QuadratureError(
                f"no convergence within {max_panels} panels (error estimate {float(total_err):.3g})"
            )
        _, _, (lo, mid, hi, left, right, _, err) = heapq.heappop(heap)
        kids = (panel(lo, mid, left), panel(mid, hi, right))
        for kid in kids:
            heapq.heappush(heap, (-kid[6], seq, kid))
            seq += 1
        # recompute rather than update incrementally to avoid drift
        total_err = ctx.fsum([item[2][6] for item in heap])
    leaves = sorted((item[2] for item in heap), key=lambda p: p[0])
    value = ctx.fsum([p[5] for p in leaves])
    return PrecReal._wrap(value, prec), PrecReal._wrap(total_err, prec)
