"""Compare the numba kernels with their pure-numpy fallbacks.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Both routes run in one process (the switch is the ``use_numba`` argument),
results are checked to be identical, and the best time of ``--repeat``
runs is reported.  The first numba call compiles, so it is timed separately.
"""

import argparse
import time

import numpy as np

from qalink import diagram as dg
from qalink import kernels
from qalink.polynomials import bracket_states
from qalink.taitgraph import _loopless, tait_graph

CASES = ["n(-1+(2/3+2/3))", "n(-1/2+(3/4+2/3))", "n([3,3]+[3,3]+1)", "n(2/5+3/7+[2,2])"]


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def bench(repeat):
    rows = []
    for expr in CASES:
        D = dg.compile_link(expr)
        G = tait_graph(D)
        eu, ev, pos = _loopless(G)
        t0 = time.perf_counter()
        bracket_states(D, use_numba=True)
        kernels.tree_census(G.n_vertices, eu, ev, pos, use_numba=True)
        warm = time.perf_counter() - t0
        for name, fn in [
            ("bracket", lambda u: bracket_states(D, use_numba=u)),
            ("trees", lambda u: kernels.tree_census(G.n_vertices, eu, ev, pos, use_numba=u)),
        ]:
            tj, a = best_of(lambda: fn(True), repeat)
            tn, b = best_of(lambda: fn(False), repeat)
            same = bool(np.array_equal(a, b)) if isinstance(a, np.ndarray) else a == b
            rows.append((expr, D.crossing_number, name, tj, tn, same, warm))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'diagram':24} {'c':>3} {'kernel':8} {'numba s':>9} {'numpy s':>9} {'speedup':>8} same")
    for expr, c, name, tj, tn, same, _ in bench(args.repeat):
        print(f"{expr:24} {c:3d} {name:8} {tj:9.4f} {tn:9.4f} {tn / max(tj, 1e-9):8.1f} {same}")


if __name__ == "__main__":
    main()
