"""Throughput of the compiled and pure-Python sampling backends.

Usage: python benchmarks/bench_sampling.py [--samples N] [--repeat R]
"""

import argparse
import time

import numpy as np

from csm import _kernels
from csm.core import Modality
from csm.gleason import random_context
from csm.sequence import Chain, sample_chain
from csm.spin import polarization_context


def chains():
    pol = Chain(polarization_context(0.0).modality(0),
                tuple(polarization_context(np.radians(a)) for a in (0, 45, 90)))
    psi = np.ones(6) / np.sqrt(6)
    spin = Chain(Modality.from_vector(psi), tuple(random_context(6, k) for k in range(8)))
    return {"polarizers 3 steps": pol, "dim 6, 8 steps": spin}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    print(f"backends available: {', '.join(sorted(_kernels.BACKENDS))}")
    print(f"{'chain':<22}{'backend':<10}{'seconds':>10}{'Msamples/s':>12}")
    for name, chain in chains().items():
        counts = {}
        for backend in sorted(_kernels.BACKENDS):
            t, s = best_of(lambda: sample_chain(chain, args.samples, 1, args.workers, backend), args.repeat)
            counts[backend] = s.counts
            print(f"{name:<22}{backend:<10}{t:>10.3f}{args.samples / t / 1e6:>12.2f}")
        if len(counts) > 1:
            same = all(c == counts["python"] for c in counts.values())
            print(f"{'':<22}counts identical across backends: {same}")


if __name__ == "__main__":
    main()
