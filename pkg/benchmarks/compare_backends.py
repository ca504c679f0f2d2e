#!/usr/bin/env python3
"""Benchmark the compiled search kernel against the pure-Python fallback.

Both kernels explore identical search trees, so besides wall-clock times
the script asserts that values, witnesses, and node counts agree.

Usage:
    python benchmarks/compare_backends.py [--heavy]

--heavy adds the larger tabulated instances (several minutes on the
pure-Python side).
"""

import argparse
import time

from eqdim.families import cycle_graph, johnson, kneser
from eqdim.solver import available_kernels, random_connected_graph, solve_graph


def cases(heavy: bool):
    yield "J(5,2)", johnson(5, 2)[0], ("johnson", 5, 2)
    yield "J(6,3)", johnson(6, 3)[0], ("johnson", 6, 3)
    yield "C9", cycle_graph(9), None
    for seed in (3, 7):
        yield f"random(12, 0.3, seed={seed})", \
            random_connected_graph(12, 0.3, seed), None
    yield "J(7,3)", johnson(7, 3)[0], ("johnson", 7, 3)
    yield "K(7,3)", kneser(7, 3)[0], ("kneser", 7, 3)
    if heavy:
        yield "J(8,4)", johnson(8, 4)[0], ("johnson", 8, 4)
        yield "J(8,3)", johnson(8, 3)[0], ("johnson", 8, 3)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--heavy", action="store_true",
                        help="include the multi-minute fallback instances")
    args = parser.parse_args()

    if "c" not in available_kernels():
        print("compiled kernel is not built; nothing to compare")
        return 1

    header = f"{'instance':<24} {'value':>5} {'nodes':>10} " \
             f"{'c [s]':>9} {'python [s]':>11} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, g, hint in cases(args.heavy):
        t0 = time.perf_counter()
        rep_c = solve_graph(g, family_hint=hint, kernel="c")
        tc = time.perf_counter() - t0
        t0 = time.perf_counter()
        rep_py = solve_graph(g, family_hint=hint, kernel="python")
        tp = time.perf_counter() - t0
        assert (rep_c.value, rep_c.status, rep_c.nodes, rep_c.witness) == \
               (rep_py.value, rep_py.status, rep_py.nodes, rep_py.witness), \
               f"backend mismatch on {name}"
        speedup = tp / tc if tc > 0 else float("inf")
        print(f"{name:<24} {rep_c.value:>5} {rep_c.nodes:>10} "
              f"{tc:>9.4f} {tp:>11.4f} {speedup:>7.1f}x")
    print("\nresults identical across backends (value, status, witness, nodes)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
