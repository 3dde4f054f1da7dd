"""Cyclic numbers: n with gcd(n, phi(n)) = 1.

n = 1 is counted as cyclic since gcd(1, phi(1)) = gcd(1, 1) = 1; this
shifts every C(x) by one relative to a count that starts at 2.
"""
from __future__ import annotations

import math
import os
import time
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import CapacityError
from .primes import SEGMENT_CAPACITY, map_segments, iter_sieve_segments, sieve_segment, _base_for

# counting ceiling; larger x is legal by type but impractical at desk scale
CENSUS_CEILING = 10**12
_TABLE_SIZE = 1 << 21

METHODS = ("gcd-sieve", "structural", "brute")


@dataclass(frozen=True)
class CensusRecord:
    x: int
    count: int
    method: str
    elapsed_ns: int

    def as_row(self):
        return asdict(self)


@lru_cache(maxsize=1)
def _small_table():
    return sieve_segment(1, _TABLE_SIZE, _base_for(_TABLE_SIZE), capacity=_TABLE_SIZE)


def factorize(n):
    """Prime factorization of ``n`` as a list of ``(p, e)`` pairs, ascending.

    Uses a cached smallest-prime-factor table below ``2**21`` and trial
    division above it.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    if n < _TABLE_SIZE:
        spf = _small_table().spf
        while n > 1:
            p = int(spf[n - 1])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            if e:
                out.append((q, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    return out


def totient(n):
    if n < _TABLE_SIZE:
        return int(_small_table().totient[n - 1])
    phi = n
    for p, _ in factorize(n):
        phi -= phi // p
    return phi


def is_cyclic(n):
    """True iff gcd(n, phi(n)) = 1."""
    if n < 1:
        raise ValueError("n must be positive")
    return math.gcd(n, totient(n)) == 1


def is_cyclic_structural(n):
    """True iff n is squarefree and no primes p, q dividing n have q = 1 mod p."""
    if n < 1:
        raise ValueError("n must be positive")
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return False
    ps = [p for p, _ in fac]
    return not any((q - 1) % p == 0 for p in ps for q in ps if q > p)


def _count_segment(seg):
    return kernels.count_coprime(seg.lo, seg.totient)


def default_workers():
    env = os.environ.get("CYCLICA_THREADS")
    if env:
        return max(1, int(env))
    return 1


def count_cyclic(x, *, segment_size=SEGMENT_CAPACITY, workers=None, ceiling=None):
    """Exact C(x) by streaming totient segments over ``[1, x]``.

    The count is an integer sum of per-segment counts, so it is the same for
    any ``segment_size`` and ``workers``.
    """
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    ceiling = CENSUS_CEILING if ceiling is None else ceiling
    if x > ceiling:
        raise CapacityError(f"x = {x} exceeds census ceiling {ceiling}")
    workers = default_workers() if workers is None else workers
    t0 = time.perf_counter_ns()
    parts = map_segments(_count_segment, 1, x + 1, segment_size, workers)
    count = sum(parts)
    return CensusRecord(x, count, "gcd-sieve", time.perf_counter_ns() - t0)


def count_cyclic_brute(x):
    """Reference count by factoring every n; only for small x."""
    t0 = time.perf_counter_ns()
    count = sum(1 for n in range(1, x + 1) if math.gcd(n, totient(n)) == 1)
    return CensusRecord(x, count, "brute", time.perf_counter_ns() - t0)


def count_cyclic_structural(x):
    t0 = time.perf_counter_ns()
    count = sum(1 for n in range(1, x + 1) if is_cyclic_structural(n))
    return CensusRecord(x, count, "structural", time.perf_counter_ns() - t0)


def enumerate_cyclic(lo, hi, *, segment_size=SEGMENT_CAPACITY):
    """Yield every cyclic n in ``[lo, hi)`` in ascending order."""
    if lo < 1 or hi <= lo:
        raise ValueError(f"need 1 <= lo < hi, got [{lo}, {hi})")
    if hi - 1 > CENSUS_CEILING:
        raise CapacityError(f"hi = {hi} exceeds census ceiling {CENSUS_CEILING}")
    for seg in iter_sieve_segments(lo, hi, segment_size):
        flags = kernels.coprime_flags(seg.lo, seg.totient)
        yield from (np.flatnonzero(flags) + seg.lo).tolist()
