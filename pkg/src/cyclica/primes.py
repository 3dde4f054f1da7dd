"""Segmented sieving: primes, smallest prime factors and Euler totients.

Everything here is exact integer arithmetic; the per-element loops live in
:mod:`cyclica.kernels` (compiled or numpy).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpz

from . import kernels
from .errors import CapacityError
from .precision import DEFAULT_PREC, GUARD_BITS, PrecReal

SEGMENT_CAPACITY = 1 << 22
# primes_up_to materializes the whole list; ~26M int64 primes at this bound
PRIME_LIST_LIMIT = 5 * 10**8
INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class PrimeList:
    """Ascending primes ``<= bound``; the array is read-only."""

    bound: int
    primes: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.primes.setflags(write=False)

    def __len__(self):
        return int(self.primes.shape[0])

    def __iter__(self):
        return iter(self.primes.tolist())

    def __getitem__(self, idx):
        return self.primes[idx]

    def upto(self, limit):
        """View of the primes ``<= limit``."""
        return self.primes[: np.searchsorted(self.primes, limit, side="right")]


@dataclass(frozen=True)
class SieveSegment:
    """Totient and smallest-prime-factor data for every n in ``[lo, hi)``."""

    lo: int
    hi: int
    totient: np.ndarray = field(repr=False)
    spf: np.ndarray = field(repr=False)

    def __len__(self):
        return self.hi - self.lo

    def phi(self, n):
        return int(self.totient[n - self.lo])

    def smallest_factor(self, n):
        return int(self.spf[n - self.lo])

    def numbers(self):
        return np.arange(self.lo, self.hi, dtype=np.int64)


def _small_primes(bound):
    """Plain Eratosthenes; used only to seed the segmented sieve."""
    if bound < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(bound + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _base_for(hi):
    """Every prime <= sqrt(hi - 1), enough to sieve anything below hi."""
    bound = math.isqrt(max(hi - 1, 1))
    return PrimeList(bound, _small_primes(bound))


def segment_bounds(lo, hi, size):
    """Consecutive ``(a, b)`` ranges covering ``[lo, hi)``, each at most ``size`` long."""
    if size < 1:
        raise ValueError("segment size must be positive")
    return [(a, min(a + size, hi)) for a in range(lo, hi, size)]


def iter_prime_blocks(lo, hi, size=SEGMENT_CAPACITY):
    """Yield ascending int64 arrays of the primes in ``[lo, hi)``, one per segment."""
    if hi <= lo:
        return
    base = _base_for(hi).primes
    for a, b in segment_bounds(lo, hi, size):
        yield kernels.sieve_primes(a, b, base)


def primes_up_to(bound, *, limit=None, segment_size=SEGMENT_CAPACITY):
    """All primes ``<= bound`` as a :class:`PrimeList`.

    Raises :class:`CapacityError` above ``limit`` (default ``PRIME_LIST_LIMIT``).
    """
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")
    limit = PRIME_LIST_LIMIT if limit is None else limit
    if bound > limit:
        raise CapacityError(f"prime list bound {bound} exceeds limit {limit}")
    blocks = list(iter_prime_blocks(2, bound + 1, segment_size))
    return PrimeList(bound, np.concatenate(blocks))


def sieve_segment(lo, hi, base, *, capacity=SEGMENT_CAPACITY):
    """Totients and smallest prime factors on ``[lo, hi)``.

    ``base`` is a :class:`PrimeList` whose bound is at least
    ``isqrt(hi - 1)``. spf(1) and phi(1) are both 1.
    """
    if lo < 1 or hi <= lo:
        raise ValueError(f"need 1 <= lo < hi, got [{lo}, {hi})")
    if hi - lo > capacity:
        raise CapacityError(f"segment length {hi - lo} exceeds capacity {capacity}")
    if hi - 1 > INT64_MAX:
        raise CapacityError("segment exceeds the 64-bit range")
    if math.isqrt(hi - 1) > base.bound:
        raise ValueError(f"base primes up to {base.bound} cannot sieve up to {hi - 1}")
    arr = base.primes
    tot, spf = kernels.sieve_totient_spf(lo, hi, arr)
    return SieveSegment(lo, hi, tot, spf)


def iter_sieve_segments(lo, hi, size=SEGMENT_CAPACITY, base=None):
    """Stream :class:`SieveSegment` objects covering ``[lo, hi)`` in order."""
    if base is None:
        base = _base_for(hi)
    for a, b in segment_bounds(lo, hi, size):
        yield sieve_segment(a, b, base, capacity=max(size, b - a))


def map_segments(func, lo, hi, size=SEGMENT_CAPACITY, workers=1):
    """Apply ``func(segment)`` over ``[lo, hi)``; results come back in range order.

    With ``workers > 1`` segments are sieved on a thread pool (the compiled
    kernels release the GIL). The returned list order never depends on the
    worker count.
    """
    base = _base_for(hi)
    bounds = segment_bounds(lo, hi, size)

    def job(ab):
        a, b = ab
        return func(sieve_segment(a, b, base, capacity=max(size, b - a)))

    if workers <= 1 or len(bounds) == 1:
        return [job(ab) for ab in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, bounds))


def _fixed_point_reciprocals(primes, shift):
    # round-to-nearest of 2**shift / p, summed exactly as integers
    one = 1 << shift
    return sum((one + (p >> 1)) // p for p in primes)


def prime_reciprocal_sums(bound, classes, prec=DEFAULT_PREC, segment_size=SEGMENT_CAPACITY):
    """Sums of 1/p over primes ``p <= bound`` in several residue classes at once.

    ``classes`` is a sequence of ``(modulus, residue)`` pairs. Each term is
    rounded to nearest on a fixed-point grid of ``2**-shift`` with
    ``shift = prec + 32 + bit_length(bound)``, so the accumulated rounding
    stays below one unit at ``prec + 32`` bits. Terms are added in ascending
    prime order. Returns one :class:`PrecReal` per class.
    """
    if bound < 2:
        raise ValueError("bound must be >= 2")
    for m, r in classes:
        if m < 1:
            raise ValueError("modulus must be positive")
        if math.gcd(r % m, m) != 1 and m > 1:
            raise ValueError(f"residue {r} is not coprime to modulus {m}")
    shift = prec + GUARD_BITS + int(bound).bit_length()
    totals = [0] * len(classes)
    for block in iter_prime_blocks(2, bound + 1, segment_size):
        for i, (m, r) in enumerate(classes):
            sel = block if m == 1 else block[block % m == r % m]
            totals[i] += _fixed_point_reciprocals(sel.tolist(), shift)
    out = []
    for t in totals:
        exact = PrecReal(mpz(t), prec + GUARD_BITS + t.bit_length())
        out.append(PrecReal(exact / PrecReal(mpz(1) << shift, exact.prec), prec))
    return out


def prime_reciprocal_sum(bound, modulus=1, residue=0, prec=DEFAULT_PREC):
    """Sum of 1/p over primes ``p <= bound`` with ``p = residue (mod modulus)``."""
    return prime_reciprocal_sums(bound, [(modulus, residue)], prec)[0]
