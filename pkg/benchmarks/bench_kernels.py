"""Time the compiled and pure-Python oracle kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--radius 8] [--repeat 3]
"""

import argparse
import time

from onevar import _pykernels
from onevar.equations import VAR, parse_system
from onevar.words import letter_key

try:
    from onevar import _ckernels
except ImportError:
    _ckernels = None

WORKLOADS = {
    "[x,a]": ["x a = a x"],
    "x^2 = a^2": ["x^2 = a^2"],
    "conjugate b^-1 a b": ["x a X = B a b"],
    "three equations": ["x a = a x", "x b = b x", "x ab = ab x"],
}


def scan(module, terms, radius):
    letters = sorted([1, -1, 2, -2], key=letter_key)
    found = 0
    for first in letters:
        found += len(module.scan_ball(terms, VAR, 2, radius, first))
    return found


def best_time(module, terms, radius, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        count = scan(module, terms, radius)
        best = min(best, time.perf_counter() - start)
    return best, count


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--radius", type=int, default=8)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"radius {args.radius}, best of {args.repeat}")
    print(f"{'workload':<22}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for name, eqs in WORKLOADS.items():
        terms = [t.symbols for t in parse_system(eqs, 2).terms]
        py, n_py = best_time(_pykernels, terms, args.radius, args.repeat)
        if _ckernels is None:
            print(f"{name:<22}{py:>10.3f}{'n/a':>10}{'':>9}")
            continue
        cy, n_cy = best_time(_ckernels, terms, args.radius, args.repeat)
        assert n_py == n_cy, "kernels disagree"
        print(f"{name:<22}{py:>10.3f}{cy:>10.4f}{py / cy:>8.0f}x")


if __name__ == "__main__":
    main()
