"""Empirical checks on the intermediate objects of the asymptotic argument.

* Mertens: sum_{p <= X} 1/p - log log X, tending to the Meissel--Mertens
  constant.
* Primes in the progression 1 mod m: sum of 1/p against (log log X)/phi(m).
* Standard divisors and the S_k classes, by exhaustive enumeration.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import gmpy2
import numpy as np

from .census import factorize, totient
from .errors import CapacityError
from .precision import GUARD_BITS, PrecReal
from .primes import SEGMENT_CAPACITY, iter_sieve_segments, prime_reciprocal_sums
from .asymptotic import make_scale

DIAG_PREC = 128
# Meissel--Mertens constant, reference value for the Mertens residual
MERTENS_CONSTANT = "0.26149721284764278375542683860869585905156664826120"
SK_CENSUS_LIMIT = 10**7


@dataclass(frozen=True)
class DiagnosticRow:
    kind: str  # mertens, lemma3, sk-census
    params: dict
    observed: object  # PrecReal or int
    reference: PrecReal
    residual: PrecReal

    FIELDS = ("kind", "params", "observed", "reference", "residual")

    def row(self, digits=None):
        obs = self.observed.to_decimal(digits) if isinstance(self.observed, PrecReal) else str(self.observed)
        return {
            "kind": self.kind,
            "params": ";".join(f"{k}={v}" for k, v in self.params.items()),
            "observed": obs,
            "reference": self.reference.to_decimal(digits),
            "residual": self.residual.to_decimal(digits),
        }


def rows_to_csv(rows, digits=None):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=DiagnosticRow.FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r.row(digits))
    return buf.getvalue()


def rows_to_json(rows, digits=None):
    out = []
    for r in rows:
        d = r.row(digits)
        d["params"] = r.params
        out.append(d)
    return json.dumps(out, indent=2)


def _loglog(X, prec):
    return PrecReal(X, prec + X.bit_length()).log().log().round_to(prec)


def mertens_residual(X, prec=DIAG_PREC):
    """``sum_{p <= X} 1/p - log log X``; the limit is ``MERTENS_CONSTANT``."""
    if X < 3:
        raise ValueError("X must be >= 3")
    observed = prime_reciprocal_sums(X, [(1, 0)], prec)[0]
    reference = _loglog(X, prec)
    return DiagnosticRow(
        "mertens", {"X": X, "limit": MERTENS_CONSTANT[:14]}, observed, reference, observed - reference
    )


def lemma3_rows(ms, X, prec=DIAG_PREC):
    """Rows for several moduli from a single pass over the primes up to X.

    Each row carries ``bound_scale = log(2m)/phi(m)``, the size the error
    term is expected to have.
    """
    if X < 3:
        raise ValueError("X must be >= 3")
    ms = list(ms)
    for m in ms:
        if m < 1:
            raise ValueError("m must be positive")
    sums = prime_reciprocal_sums(X, [(m, 1) for m in ms], prec)
    ll = _loglog(X, prec)
    rows = []
    for m, observed in zip(ms, sums):
        phi = totient(m)
        reference = ll / phi
        scale = PrecReal(2 * m, prec).log() / phi
        params = {"m": m, "X": X, "phi_m": phi, "bound_scale": scale.to_decimal(12)}
        rows.append(DiagnosticRow("lemma3", params, observed, reference, observed - reference))
    return rows


def lemma3_residual(m, X, prec=DIAG_PREC):
    """Sum of 1/p over p <= X with p = 1 mod m, against (log log X)/phi(m)."""
    return lemma3_rows([m], X, prec)[0]


# -- standard divisors -----------------------------------------------------

def standard_threshold(x, prec=DIAG_PREC):
    """Largest integer q with ``q <= x**(1/log log x)``.

    Decided through ``log q <= log x / log log x`` at ``prec + 32`` bits;
    equality counts as inside.
    """
    if x < 16:
        raise ValueError("x must be >= 16")
    work = prec + GUARD_BITS
    logx = PrecReal(x, work + x.bit_length()).log().round_to(work)
    t = logx / logx.log()
    q = int(t.exp())
    while PrecReal(q + 1, work).log() <= t:
        q += 1
    while q > 1 and PrecReal(q, work).log() > t:
        q -= 1
    return q


def classify_standard(n, x, *, threshold=None):
    """Primes p | n for which some prime q | n with q <= x**(1/log log x) has q = 1 mod p.

    Every such p divides gcd(n, phi(n)): p | n, and p | q - 1 | phi(n).
    """
    if not 1 <= n <= x:
        raise ValueError("need 1 <= n <= x")
    qmax = standard_threshold(x) if threshold is None else threshold
    ps = [p for p, _ in factorize(n)]
    return frozenset(p for p in ps if any(q <= qmax and (q - 1) % p == 0 for q in ps))


# -- S_k census -----------------------------------------------------------

@dataclass(frozen=True)
class SkCensus:
    x: int
    counts: tuple  # #S_0 .. #S_kmax
    y: PrecReal
    z: PrecReal
    threshold: int
    pre_asymptotic: bool
    notes: tuple = field(default=())

    def rows(self, digits=None):
        zero = PrecReal(0, DIAG_PREC)
        rows = []
        for k, c in enumerate(self.counts):
            params = {"x": self.x, "k": k}
            if self.pre_asymptotic:
                params["regime"] = "pre-asymptotic"
            rows.append(DiagnosticRow("sk-census", params, c, zero, PrecReal(c, DIAG_PREC)))
        return rows


def _factor_matrix(spf, n):
    """Distinct prime factors and exponents of each entry of n, as padded matrices.

    ``spf[v - 1]`` is the smallest prime factor of v for every v <= max(n).
    """
    rem = n.copy()
    primes_cols, exps_cols = [], []
    while True:
        live = rem > 1
        if not live.any():
            break
        p = np.where(live, spf[np.maximum(rem, 1) - 1], 0)
        e = np.zeros_like(rem)
        while True:
            hit = (p > 0) & (rem % np.maximum(p, 1) == 0)
            if not hit.any():
                break
            rem[hit] //= p[hit]
            e[hit] += 1
        primes_cols.append(p)
        exps_cols.append(e)
    if not primes_cols:
        z = np.zeros((n.shape[0], 1), dtype=np.int64)
        return z, z
    return np.stack(primes_cols, axis=1), np.stack(exps_cols, axis=1)


def sk_census(x, kmax, *, chunk=1 << 18):
    """Exact sizes of S_0, ..., S_kmax for all n <= x.

    S_0: no prime factor in [2, y]. S_k (k >= 1): in S_0, exactly k distinct
    prime factors in (y, z], each to the first power, at least one a
    standard divisor. When y < 2 the interval [2, y] is empty, S_0 is every
    n <= x, and the result is flagged pre-asymptotic.
    """
    if x < 16:
        raise ValueError("x must be >= 16")
    if x > SK_CENSUS_LIMIT:
        raise CapacityError(f"sk_census is exhaustive; x = {x} exceeds {SK_CENSUS_LIMIT}")
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    scale = make_scale(x, DIAG_PREC)
    qmax = standard_threshold(x)
    yf = int(gmpy2.floor(scale.y.value))
    zf = int(gmpy2.floor(scale.z.value))
    spf = np.concatenate([seg.spf for seg in iter_sieve_segments(1, x + 1, SEGMENT_CAPACITY)])
    counts = [0] * (kmax + 1)
    for lo in range(1, x + 1, chunk):
        n = np.arange(lo, min(lo + chunk, x + 1), dtype=np.int64)
        P, E = _factor_matrix(spf, n)
        present = P > 0
        small = present & (P <= yf)
        in_s0 = ~small.any(axis=1)
        mid = present & (P > yf) & (P <= zf)
        k = mid.sum(axis=1)
        simple = ~(mid & (E > 1)).any(axis=1)
        # standard[i, a]: prime P[i, a] in (y, z] has a partner q = P[i, b] <= qmax, q = 1 mod p
        std = np.zeros(P.shape, dtype=bool)
        for b in range(P.shape[1]):
            q = P[:, b : b + 1]
            ok_q = (q > 0) & (q <= qmax)
            std |= mid & ok_q & ((q - 1) % np.maximum(P, 1) == 0)
        has_std = std.any(axis=1)
        counts[0] += int(in_s0.sum())
        sel = in_s0 & simple & has_std
        for kk in range(1, kmax + 1):
            counts[kk] += int((sel & (k == kk)).sum())
    notes = ("pre-asymptotic regime: y < 2, so S_0 is every n <= x",) if scale.pre_asymptotic else ()
    return SkCensus(x, tuple(counts), scale.y, scale.z, qmax, scale.pre_asymptotic, notes)
