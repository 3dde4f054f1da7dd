"""Compare the Cython and numpy sieve kernels.

    python benchmarks/bench_kernels.py [--x 10_000_000] [--repeat 3]
"""
import argparse
import math
import time

import numpy as np

from cyclica.kernels import backends
from cyclica.primes import SEGMENT_CAPACITY, _small_primes, segment_bounds


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench(mod, x, size):
    base = _small_primes(math.isqrt(x))

    def totients():
        return [mod.sieve_totient_spf(a, b, base) for a, b in segment_bounds(1, x + 1, size)]

    def count():
        total = 0
        for a, b in segment_bounds(1, x + 1, size):
            tot, _ = mod.sieve_totient_spf(a, b, base)
            total += mod.count_coprime(a, tot)
        return total

    def primes():
        return sum(int(mod.sieve_primes(a, b, base).shape[0]) for a, b in segment_bounds(2, x + 1, size))

    return {"totient+spf": totients, "count cyclic": count, "prime sieve": primes}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--x", type=lambda s: int(s.replace("_", "")), default=10**7)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--segment-size", type=int, default=SEGMENT_CAPACITY)
    args = ap.parse_args()

    mods = backends()
    results = {}
    for name, mod in mods.items():
        for task, fn in bench(mod, args.x, args.segment_size).items():
            secs, out = _best(fn, args.repeat)
            results[(name, task)] = (secs, out)

    print(f"x = {args.x:_}, segment = {args.segment_size:_}, best of {args.repeat}")
    print(f"{'task':<14}" + "".join(f"{n:>12}" for n in mods) + ("   speedup" if len(mods) > 1 else ""))
    for task in ("totient+spf", "count cyclic", "prime sieve"):
        row = f"{task:<14}" + "".join(f"{results[(n, task)][0]:>11.3f}s" for n in mods)
        if len(mods) > 1:
            row += f"{results[('numpy', task)][0] / results[('cython', task)][0]:>9.1f}x"
        print(row)
    if "cython" in mods:
        for task in ("count cyclic", "prime sieve"):
            assert results[("numpy", task)][1] == results[("cython", task)][1], task
        print("outputs agree across backends")


if __name__ == "__main__":
    main()
