"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are imported directly, so the environment switch is not needed.
"""

import argparse
import itertools
import time

from sigchoose import _pykernels
from sigchoose.gadgets import build_theorem10_instance
from sigchoose.generators import make_rng, random_lists, random_planar
from sigchoose.solver import _encode

try:
    from sigchoose import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def cases():
    inst = build_theorem10_instance()
    # the full refutation takes about 4.3M nodes, too many for the Python side
    yield "search: nine-cube 3-list construction, first 300k nodes", "search", (inst.graph, inst.lists)
    rng = make_rng(7)
    g = random_planar(14, rng, keep=1.0)
    yield "count: 14-vertex triangulation, 4-lists from -3..3", "count", (g, random_lists(g, 4, range(-3, 4), rng))
    U = (-2, -1, 0, 1, 2)
    yield "claim2 sweep: universe of 5 colors, one sign pattern", "claim2", (U,)


def run_case(kind, args, impl):
    if kind in ("search", "count"):
        g, lists = args
        enc = _encode(g, lists)
        limit = 300_000 if kind == "search" else -1
        return lambda: impl.search(g.n, *enc, kind == "count", limit)[:3:2]
    (U,) = args
    pairs = list(itertools.combinations(U, 2))
    triples = list(itertools.combinations(U, 3))
    return lambda: impl.claim2_sweep(U, pairs, triples, (-1, 1, 1, -1))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the Python backend is timed")
    print(f"{'case':58s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for label, kind, args in cases():
        tp, rp = _time(run_case(kind, args, _pykernels), a.repeat)
        if _ckernels is None:
            print(f"{label:58s} {tp:10.3f} {'-':>11s} {'-':>8s}")
            continue
        tc, rc = _time(run_case(kind, args, _ckernels), a.repeat)
        assert rp == rc, (label, rp, rc)
        print(f"{label:58s} {tp:10.3f} {tc:11.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
