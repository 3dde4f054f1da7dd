"""Kernel backend selected at import.

The Cython extension ``cyclica._kernels`` is used when it has been built;
otherwise the numpy implementation in :mod:`cyclica._fallback` is loaded.
Setting ``CYCLICA_PURE=1`` forces the fallback.
"""
import os

from . import _fallback

if os.environ.get("CYCLICA_PURE") == "1":
    _impl = _fallback
    BACKEND = "numpy"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "numpy"

sieve_totient_spf = _impl.sieve_totient_spf
coprime_flags = _impl.coprime_flags
count_coprime = _impl.count_coprime
sieve_primes = _impl.sieve_primes


def backends():
    """Map of every importable backend name to its module."""
    found = {"numpy": _fallback}
    try:
        from . import _kernels
        found["cython"] = _kernels
    except ImportError:
        pass
    return found
