# cython: language_level=3
"""Compiled sieve kernels.

Same signatures and outputs as :mod:`cyclica._fallback`; the selection
happens in :mod:`cyclica.kernels`.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()


cdef inline int64_t _gcd(int64_t a, int64_t b) noexcept nogil:
    cdef int64_t t
    while b:
        t = a % b
        a = b
        b = t
    return a


def sieve_totient_spf(int64_t lo, int64_t hi, const int64_t[::1] base):
    """Euler totient and smallest prime factor for every n in [lo, hi)."""
    cdef Py_ssize_t size = hi - lo
    tot_arr = np.empty(size, dtype=np.int64)
    spf_arr = np.zeros(size, dtype=np.int64)
    rem_arr = np.empty(size, dtype=np.int64)
    cdef int64_t[::1] tot = tot_arr
    cdef int64_t[::1] spf = spf_arr
    cdef int64_t[::1] rem = rem_arr
    cdef Py_ssize_t i, k, nbase = base.shape[0]
    cdef int64_t p, start, j, r
    with nogil:
        for i in range(size):
            tot[i] = lo + i
            rem[i] = lo + i
        for k in range(nbase):
            p = base[k]
            if p * p >= hi:
                # larger primes divide each n at most once; left in rem
                break
            start = ((lo + p - 1) // p) * p
            j = start
            while j < hi:
                i = j - lo
                if spf[i] == 0:
                    spf[i] = p
                tot[i] -= tot[i] // p
                r = rem[i] // p
                while r % p == 0:
                    r = r // p
                rem[i] = r
                j += p
        for i in range(size):
            r = rem[i]
            if r > 1:
                tot[i] -= tot[i] // r
                if spf[i] == 0:
                    spf[i] = r
            elif spf[i] == 0:
                spf[i] = 1
    return tot_arr, spf_arr


def coprime_flags(int64_t lo, const int64_t[::1] tot):
    """flags[i] = 1 iff gcd(lo + i, tot[i]) == 1."""
    cdef Py_ssize_t size = tot.shape[0], i
    out_arr = np.empty(size, dtype=np.uint8)
    cdef uint8_t[::1] out = out_arr
    with nogil:
        for i in range(size):
            out[i] = _gcd(lo + i, tot[i]) == 1
    return out_arr


def count_coprime(int64_t lo, const int64_t[::1] tot):
    """Number of i with gcd(lo + i, tot[i]) == 1."""
    cdef Py_ssize_t size = tot.shape[0], i
    cdef int64_t n, count = 0
    with nogil:
        for i in range(size):
            n = lo + i
            # even n > 2 has even totient
            if (n & 1) == 0 and n > 2:
                continue
            if _gcd(n, tot[i]) == 1:
                count += 1
    return count


def sieve_primes(int64_t lo, int64_t hi, const int64_t[::1] base):
    """All primes in [lo, hi), ascending; base must hold every prime <= sqrt(hi - 1)."""
    cdef Py_ssize_t size = hi - lo
    flags_arr = np.ones(size, dtype=np.uint8)
    cdef uint8_t[::1] flags = flags_arr
    cdef Py_ssize_t k, i, nbase = base.shape[0]
    cdef int64_t p, j
    with nogil:
        for i in range(size):
            if lo + i < 2:
                flags[i] = 0
            else:
                break
        for k in range(nbase):
            p = base[k]
            if p * p >= hi:
                break
            j = ((lo + p - 1) // p) * p
            if j < p * p:
                j = p * p
            while j < hi:
                flags[j - lo] = 0
                j += p
    return np.flatnonzero(flags_arr).astype(np.int64) + lo
