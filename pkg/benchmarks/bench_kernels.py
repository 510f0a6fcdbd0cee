"""Time the compiled and numpy run-length kernels on one long uniform word.

    python3 benchmarks/bench_kernels.py [K] [repeats]
"""

import sys
import timeit

import numpy as np

from carpet_lab import kernels
from carpet_lab.core import carpet, ell_table
from carpet_lab.runlength import membership

SPEC = carpet(8, 4, [(0, 0), (1, 0), (7, 0), (3, 1), (4, 1), (6, 1), (7, 1), (2, 2), (4, 2), (5, 2), (6, 2), (1, 3), (2, 3)])


def main() -> None:
    K = int(sys.argv[1]) if len(sys.argv) > 1 else 10**6
    repeats = int(sys.argv[2]) if len(sys.argv) > 2 else 5
    ells = ell_table(SPEC, K)
    rng = np.random.default_rng(0)
    ydig = np.array([d[1] for d in SPEC.digits], dtype=np.int64)
    y = ydig[rng.integers(0, SPEC.N, size=int(ells[-1]))]
    plus, minus = membership(SPEC)
    results = {}
    for name, fn in sorted(kernels.BACKENDS.items()):
        best = min(timeit.repeat(lambda: fn(y, ells, plus, minus, SPEC.m), number=1, repeat=repeats))
        results[name] = fn(y, ells, plus, minus, SPEC.m)
        print(f"{name:9s} K={K:>9d}  best of {repeats}: {best * 1e3:9.2f} ms")
    outs = list(results.values())
    same = all(np.array_equal(a, b) for o in outs[1:] for a, b in zip(outs[0], o))
    print(f"outputs identical: {same}")


if __name__ == "__main__":
    main()
