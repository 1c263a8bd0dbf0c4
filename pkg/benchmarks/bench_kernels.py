"""Timings for the hot kernels, compiled lane against the pure-python lane.

Usage:  python benchmarks/bench_kernels.py [--repeat N]

Three workloads:
  table     subset-sum reachability tables (or_shift sweeps)
  witness   minimum-cardinality witnesses (min_shift1 suffix stacks)
  orient    orientation backtracking search
"""

import argparse
import random
import time

from zpflow import _kernels, _kernels_py

try:
    from zpflow import _ck
except ImportError:
    _ck = None


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_table(impl, repeat):
    rng = random.Random(1)
    p, n = 5, 6  # 15625 states
    items = [
        tuple(rng.randrange(p) for _ in range(n)) for _ in range(300)
    ]

    def run():
        import numpy as np

        table = np.zeros(p**n, dtype=np.uint8)
        table[0] = 1
        for it in items:
            table = impl.or_shift(table, it, p)

    return time_call(run, repeat)


def bench_witness(impl, repeat):
    rng = random.Random(2)
    p, n = 3, 7  # 2187 states
    items = [tuple(rng.randrange(p) for _ in range(n)) for _ in range(200)]

    def run():
        import numpy as np

        INF = np.int32(2**30)
        dist = np.full(p**n, INF, dtype=np.int32)
        dist[0] = 0
        for it in items:
            dist = impl.min_shift1(dist, it, p)

    return time_call(run, repeat)


def bench_orient(impl, repeat):
    rng = random.Random(3)
    k, nv, m = 7, 8, 18
    tails = [rng.randrange(nv) for _ in range(m)]
    heads = []
    for t in tails:
        h = rng.randrange(nv - 1)
        heads.append(h if h < t else h + 1)
    ws = [rng.randrange(1, k) for _ in range(m)]
    beta = [0] * nv
    for e in range(m):
        if rng.random() < 0.5:
            tl, hd = tails[e], heads[e]
        else:
            tl, hd = heads[e], tails[e]
        beta[tl] = (beta[tl] + ws[e]) % k
        beta[hd] = (beta[hd] - ws[e]) % k
    order = _kernels.decision_order(m, tails, heads, nv)

    def run():
        res = impl.orientation_search(k, tails, heads, ws, beta, order)
        assert res is not None

    return time_call(run, repeat)


BENCHES = [
    ("table  (p=5, n=6, 300 items)", bench_table),
    ("witness (p=3, n=7, 200 items)", bench_witness),
    ("orient (k=7, 8 vertices, 18 edges)", bench_orient),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"active dispatch lane: {_kernels.backend()}")
    if _ck is None:
        print("compiled extension not built; timing the python lane only\n")
    lanes = [("python", _kernels_py)] + ([("compiled", _ck)] if _ck else [])

    for name, bench in BENCHES:
        times = {lane: bench(impl, args.repeat) for lane, impl in lanes}
        line = f"{name:38s}"
        for lane, t in times.items():
            line += f"  {lane} {t * 1000:9.2f} ms"
        if len(times) == 2:
            line += f"  speedup {times['python'] / times['compiled']:6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
