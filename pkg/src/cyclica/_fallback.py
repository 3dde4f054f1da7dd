"""Vectorized numpy versions of the sieve kernels.

Used when the compiled extension is unavailable or ``CYCLICA_PURE=1``.
Outputs are identical to :mod:`cyclica._kernels` element for element.
"""
import numpy as np


def sieve_totient_spf(lo, hi, base):
    size = hi - lo
    n = np.arange(lo, hi, dtype=np.int64)
    tot = n.copy()
    rem = n.copy()
    spf = np.zeros(size, dtype=np.int64)
    for p in base.tolist():
        if p * p >= hi:
            break
        start = -lo % p
        sl = slice(start, size, p)
        blk = spf[sl]
        blk[blk == 0] = p
        tot[sl] -= tot[sl] // p
        rem[sl] //= p
        pk = p * p
        while pk < hi:
            sub = slice(-lo % pk, size, pk)
            rem[sub] //= p
            pk *= p
    big = rem > 1
    tot[big] -= tot[big] // rem[big]
    unset = spf == 0
    spf[unset & big] = rem[unset & big]
    spf[unset & ~big] = 1
    return tot, spf


def coprime_flags(lo, tot):
    n = np.arange(lo, lo + tot.shape[0], dtype=np.int64)
    return (np.gcd(n, tot) == 1).astype(np.uint8)


def count_coprime(lo, tot):
    return int(np.count_nonzero(coprime_flags(lo, tot)))


def sieve_primes(lo, hi, base):
    size = hi - lo
    flags = np.ones(size, dtype=bool)
    flags[: max(0, min(size, 2 - lo))] = False
    for p in base.tolist():
        if p * p >= hi:
            break
        start = max(p * p, lo + (-lo % p))
        flags[start - lo :: p] = False
    return np.flatnonzero(flags).astype(np.int64) + lo
