"""Benchmark the two folding kernels against each other.

Workloads: (1) folding a long random involutive edge soup, (2) the
Stephen-style workload of repeatedly re-folding a graph after vertex
identifications (many small union cascades), and (3) a real pipeline
call: the core of a word in the Z2*Z3 amalgam at depth.

Run:  python3 benchmarks/bench_fold.py [--repeat N]
"""

import argparse
import random
import time

from opuntia import _foldpy

try:
    from opuntia import _foldcore
except ImportError:
    _foldcore = None


def random_soup(rng, n, m, labels):
    edges = []
    for _ in range(m):
        s, t = rng.randrange(n), rng.randrange(n)
        lab = rng.randrange(labels) * 2
        edges.append((s, lab, t))
        edges.append((t, lab ^ 1, s))
    return edges


def cascade_workload(rng, n, labels):
    # a line graph with random chords: identifications propagate far
    edges = []
    for v in range(n - 1):
        lab = (v % labels) * 2
        edges.append((v, lab, v + 1))
        edges.append((v + 1, lab ^ 1, v))
    pending = [(rng.randrange(n), rng.randrange(n)) for _ in range(n // 10)]
    return edges, pending


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _foldcore is None:
        print("compiled kernel not built; run pip install -e . first")
        return

    rng = random.Random(20260815)
    soup = random_soup(rng, 20_000, 60_000, 4)
    line, pending = cascade_workload(rng, 50_000, 3)

    rows = []
    for name, n, edges, pend in (
            ("soup 20k/120k", 20_000, soup, ()),
            ("cascade 50k", 50_000, line, pending)):
        tp, outp = timeit(lambda: _foldpy.fold_edges(n, edges, pend),
                          args.repeat)
        tc, outc = timeit(lambda: _foldcore.fold_edges(n, edges, pend),
                          args.repeat)
        assert outp == outc, f"backends disagree on {name}"
        rows.append((name, tp, tc))

    # real pipeline: word core + depth expansion, backend switched via env
    import os
    import subprocess
    import sys
    snippet = (
        "import time; "
        "from opuntia.catalog import corpus_amalgams; "
        "from opuntia.amalgams import core, expand_to_depth; "
        "a = corpus_amalgams()['z2*z3/1']; "
        "t0 = time.perf_counter(); "
        "_, d = core(a, a.parse_word('a')); "
        "d = expand_to_depth(d, a, 4); "
        "print(time.perf_counter() - t0)")
    times = {}
    for label, env in (("python", {"OPUNTIA_PURE": "1"}), ("cython", {})):
        best = float("inf")
        for _ in range(args.repeat):
            out = subprocess.run(
                [sys.executable, "-c", snippet],
                env={**os.environ, **env}, capture_output=True, text=True,
                check=True)
            best = min(best, float(out.stdout))
        times[label] = best
    rows.append(("core+expand d4", times["python"], times["cython"]))

    print(f"{'workload':<18} {'python':>10} {'cython':>10} {'speedup':>9}")
    for name, tp, tc in rows:
        print(f"{name:<18} {tp:>9.4f}s {tc:>9.4f}s {tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
