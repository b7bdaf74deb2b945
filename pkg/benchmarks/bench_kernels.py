"""Compiled vs pure-Python search kernels on the exhaustive workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import statistics
import time

from covergraph import kernels
from covergraph.constructions import mycielskian
from covergraph.graph import build_cycle, complete, petersen
from covergraph.orientations import cycle_traversals, search_order, simple_cycles


def workloads():
    for G in (mycielskian(build_cycle(5), 1), mycielskian(build_cycle(7), 1), mycielskian(build_cycle(5), 2), complete(7), petersen()):
        order = search_order(G)
        edges = [G.index_edges[k] for k in order]
        yield f"cover {G.name}", lambda backend, G=G, edges=edges: kernels.cover_search(G.order, edges, backend=backend)
    for G in (complete(6), mycielskian(build_cycle(3), 1), mycielskian(complete(2), 2), petersen()):
        order = search_order(G)
        edges = [G.index_edges[k] for k in order]
        yield f"d_min {G.name}", lambda backend, G=G, edges=edges: kernels.dmin_search(G.order, edges, backend=backend)
    for G in (build_cycle(9), complete(5), mycielskian(complete(2), 1)):
        order = search_order(G)
        edges = [G.index_edges[k] for k in order]
        cyc = cycle_traversals(G, simple_cycles(G), order)
        yield f"imbalance {G.name}", lambda backend, G=G, edges=edges, cyc=cyc: kernels.min_imbalance(G.order, edges, cyc, backend=backend)


def timed(fn, backend, repeat):
    samples = []
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn(backend)
        samples.append(time.perf_counter() - t)
    return statistics.median(samples), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if kernels._ckernels is None:
        print("compiled kernels are not built; only the Python backend is available")
        return 1
    print(f"{'workload':<28}{'nodes':>10}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in workloads():
        tp, rp = timed(fn, "python", args.repeat)
        tc, rc = timed(fn, "cython", args.repeat)
        assert rp == rc, f"backends disagree on {name}"
        print(f"{name:<28}{rp[-1]:>10}{tp * 1e3:>12.2f}{tc * 1e3:>12.3f}{tp / max(tc, 1e-9):>10.0f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
