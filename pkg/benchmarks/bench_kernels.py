"""Time the compiled and numpy kernels on the Monte Carlo workloads.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import timeit

import numpy as np

from ghzbell import bell, ghz, measurement, rng
from ghzbell import pauli as pa
from ghzbell._backend import available_backends


def workloads():
    singlet_ops = np.stack([pa.embed(pa.pauli(0.0), 1, 2), pa.embed(pa.pauli(math.pi / 3), 2, 2)])
    _, ghz_ops = measurement.compile_steps([("A1", "spin"), ("A2", "product"), ("A1", "product")])
    data = np.random.default_rng(1).choice(np.array([-1, 1], dtype=np.int8), size=(4, 100_000))
    lambdas = 2 * math.pi * rng.uniform_block(1, 100_000, 1)[:, 0]
    angles = np.radians([0.0, 60.0, 120.0])
    u_singlet = rng.uniform_block(1, 100_000, 2)
    u_ghz = rng.uniform_block(1, 10_000, ghz_ops.shape[0])
    singlet, psi = bell.singlet_state(), ghz.ghz_state().vector
    return {
        "sample_sequence singlet 1e5": lambda k: k.sample_sequence(singlet, singlet_ops, u_singlet),
        "sample_sequence ghz 1e4x5": lambda k: k.sample_sequence(psi, ghz_ops, u_ghz),
        "product_sums 4x1e5": lambda k: k.product_sums(data),
        "bell3_residual 1e5": lambda k: k.bell3_residual(data[0], data[1], data[2]),
        "lhv_outcomes 3x1e5": lambda k: k.lhv_outcomes(angles, np.ones(3, dtype=np.int8), lambdas),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'workload':32s}" + "".join(f"{n:>12s}" for n in names) + ("   speedup" if len(names) == 2 else ""))
    for label, fn in workloads().items():
        times = {}
        for name in names:
            k = backends[name]
            times[name] = min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
        row = f"{label:32s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if len(names) == 2:
            row += f"  {times['python'] / times['cython']:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
