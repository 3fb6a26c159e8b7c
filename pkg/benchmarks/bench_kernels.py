"""Compare the numba kernels with the pure-numpy fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload computes Betti tables (and hence runs the homology and rank
kernels) under both backends, checks that the answers agree, and reports the
best wall-clock time of ``--repeat`` runs.  The numba timings exclude the
one-off compilation, which is triggered by a warm-up run.
"""

from __future__ import annotations

import argparse
import time

from sqfpow import _accel
from sqfpow.graphs import brooms, cycle, forest_corpus, matching_number, path
from sqfpow.monomials import edge_ideal, squarefree_power
from sqfpow.resolution import GF2, QQ, betti_table, clear_cache


def _tables(graphs, field):
    clear_cache()  # Betti tables are memoised independently of the backend
    out = []
    for G in graphs:
        I = edge_ideal(G)
        for k in range(1, matching_number(G) + 1):
            out.append(betti_table(squarefree_power(I, k), field))
    return out


WORKLOADS = {
    "forests<=8 GF(2)": (lambda: list(forest_corpus(8)), GF2),
    "brooms<=8 GF(2)": (lambda: brooms(8), GF2),
    "paths+cycles 6..10 Q": (lambda: [path(n) for n in range(6, 11)] + [cycle(n) for n in range(6, 11)], QQ),
}


def _best(func, repeat: int) -> tuple[float, object]:
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = func()
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    backends = ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else [])
    if not _accel.HAVE_NUMBA:
        print("numba unavailable: timing the numpy backend only")
    print(f"{'workload':<24}" + "".join(f"{b:>12}" for b in backends) + ("   speedup" if len(backends) == 2 else ""))
    for name, (make, field) in WORKLOADS.items():
        graphs = make()
        times, results = {}, {}
        for b in backends:
            with _accel.use_backend(b):
                _tables(graphs[:3], field)  # warm-up / compilation
                times[b], results[b] = _best(lambda: _tables(graphs, field), args.repeat)
        if len(backends) == 2 and results["numpy"] != results["numba"]:
            print(f"{name}: backends disagree")
            return 1
        row = f"{name:<24}" + "".join(f"{times[b]:>11.3f}s" for b in backends)
        if len(backends) == 2:
            row += f"{times['numpy'] / times['numba']:>9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
