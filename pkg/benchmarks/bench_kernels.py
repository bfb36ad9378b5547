"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 0]

Both backends run on the same random tables in one process and every result
is compared, so the script doubles as a smoke test of backend agreement.
"""

import argparse
import sys
import timeit

import numpy as np

from bfc import _pykernels as py
from bfc import kernels

try:
    from bfc import _ckernels as c
except ImportError:
    c = None


def _tables(n, count, rng):
    return [kernels.as_table(rng.integers(0, 2, 1 << n)) for _ in range(count)]


def _bits(tt):
    return sum(int(v) << i for i, v in enumerate(tt))


def workloads(rng):
    small = _tables(8, 20, rng)
    mid = _tables(10, 4, rng)
    tiny = _tables(4, 200, rng)
    return [
        ("sensitivity_at, n=10, all x", mid,
         lambda m, tt: [m.sensitivity_at(tt, 10, x) for x in range(1024)]),
        ("block_sensitivity_max, n=8", small, lambda m, tt: m.block_sensitivity_max(tt, 8)),
        ("certificate_max, n=8", small, lambda m, tt: m.certificate_max(tt, 8)),
        ("decision_tree_depth, n=10", mid, lambda m, tt: m.decision_tree_depth(tt, 10)),
        ("parity_tree_depth, n=4", tiny, lambda m, tt: m.parity_tree_depth(_bits(tt), 4)),
        ("shi_vertex_sweep q=32, n=8", small[:1], lambda m, tt: m.shi_vertex_sweep(tt, 8, 32)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if c is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':34} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for name, inputs, call in workloads(rng):
        results = {}
        timings = {}
        for label, mod in (("cython", c), ("python", py)):
            results[label] = [call(mod, tt) for tt in inputs]
            timings[label] = min(timeit.repeat(lambda: [call(mod, tt) for tt in inputs],
                                               number=1, repeat=args.repeat))
        if results["cython"] != results["python"]:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 3
        ratio = timings["python"] / timings["cython"] if timings["cython"] else float("inf")
        print(f"{name:34} {timings['cython']:10.4f} {timings['python']:10.4f} {ratio:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
