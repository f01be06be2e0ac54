"""Time the compiled and numpy kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one row per kernel and problem size with the best per-call time of
each backend and the speedup. Without the compiled extension only the numpy
column is filled.
"""

import argparse
import timeit

import numpy as np

from qmatrix.kernels import available_backends
from qmatrix.random import random_channel, random_density


def cases(rng):
    for n in (2, 4, 6):
        rho = random_density(2**n, rng).matrix.copy()
        keep = [i % 2 == 0 for i in range(n)]
        yield f"partial_trace {n} qubits", "partial_trace", (rho, [2] * n, keep)
    for d in (2, 8, 32):
        ch = random_channel(d, 4, rng)
        rho = random_density(d, rng).matrix.copy()
        yield f"kraus_apply d={d}, 4 ops", "kraus_apply", (ch.kraus.copy(), rho)
        yield f"choi_matrix d={d}, 4 ops", "choi_matrix", (ch.kraus.copy(),)
        yield f"copy_defect_matrix d={d}", "copy_defect_matrix", (rho,)
    for d, n in ((2, 3), (4, 16), (8, 32)):
        stack = np.stack([random_density(d, rng).matrix for _ in range(n)])
        yield f"max_commutator_norm d={d}, {n} states", "max_commutator_norm", (stack,)


def best_time(fn, args, repeat: int) -> float:
    timer = timeit.Timer(lambda: fn(*args))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    backends = available_backends()
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<40} {'numpy':>12} {'cython':>12} {'speedup':>8}")
    for title, name, inputs in cases(rng):
        py = best_time(getattr(backends["python"], name), inputs, args.repeat)
        if "cython" in backends:
            cy = best_time(getattr(backends["cython"], name), inputs, args.repeat)
            print(f"{title:<40} {py * 1e6:>10.2f}us {cy * 1e6:>10.2f}us {py / cy:>7.1f}x")
        else:
            print(f"{title:<40} {py * 1e6:>10.2f}us {'n/a':>12} {'':>8}")


if __name__ == "__main__":
    main()
