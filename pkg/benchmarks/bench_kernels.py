"""Benchmark the compiled kernel backend against the pure-Python fallback.

Runs each kernel on a synthetic workload sized like a real screening run
(tens of thousands of sparse cosines, dense similarity blocks) and prints
a speedup table. Results from the two backends are asserted equal before
timing is reported.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from vtscreen.kernels import get_backend


def _sparse_pairs(rng, count, nnz, vocab):
    pairs = []
    for _ in range(count):
        ids_a = np.sort(rng.choice(vocab, size=nnz, replace=False)).astype(np.int64)
        ids_b = np.sort(rng.choice(vocab, size=nnz, replace=False)).astype(np.int64)
        pairs.append((ids_a, rng.uniform(0.1, 4.0, nnz), ids_b, rng.uniform(0.1, 4.0, nnz)))
    return pairs


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions, best of N")
    args = parser.parse_args()

    rng = np.random.default_rng(7)
    pure = get_backend("pure")
    try:
        fast = get_backend("compiled")
    except ImportError:
        raise SystemExit("compiled backend not built; run pip install -e . first")

    rows = []

    pairs = _sparse_pairs(rng, 2000, 40, 50_000)
    assert all(pure.sparse_cosine(*p) == fast.sparse_cosine(*p) for p in pairs[:50])
    t_pure = _time(lambda: [pure.sparse_cosine(*p) for p in pairs], args.repeat)
    t_fast = _time(lambda: [fast.sparse_cosine(*p) for p in pairs], args.repeat)
    rows.append(("sparse_cosine x2000 (nnz 40)", t_pure, t_fast))

    cos_v = rng.uniform(0, 1, 4)
    cos_t = rng.uniform(0, 1, 4)
    assert pure.pair_accumulate(cos_v, cos_t) == fast.pair_accumulate(cos_v, cos_t)
    t_pure = _time(lambda: [pure.pair_accumulate(cos_v, cos_t) for _ in range(20_000)], args.repeat)
    t_fast = _time(lambda: [fast.pair_accumulate(cos_v, cos_t) for _ in range(20_000)], args.repeat)
    rows.append(("pair_accumulate x20000 (4x4)", t_pure, t_fast))

    cands = rng.normal(size=(500, 128))
    seeds = rng.normal(size=(20, 128))
    out_pure = np.zeros((500, 20))
    out_fast = np.zeros((500, 20))
    pure.cosine_matrix(cands, seeds, out_pure)
    fast.cosine_matrix(cands, seeds, out_fast)
    assert (out_pure == out_fast).all()
    t_pure = _time(lambda: pure.cosine_matrix(cands, seeds, out_pure), args.repeat)
    t_fast = _time(lambda: fast.cosine_matrix(cands, seeds, out_fast), args.repeat)
    rows.append(("cosine_matrix 500x20 (dim 128)", t_pure, t_fast))

    max_pure = np.zeros(500)
    max_fast = np.zeros(500)
    pure.max_cosine_rows(cands, seeds, max_pure)
    fast.max_cosine_rows(cands, seeds, max_fast)
    assert (max_pure == max_fast).all()
    t_pure = _time(lambda: pure.max_cosine_rows(cands, seeds, max_pure), args.repeat)
    t_fast = _time(lambda: fast.max_cosine_rows(cands, seeds, max_fast), args.repeat)
    rows.append(("max_cosine_rows 500x20 (dim 128)", t_pure, t_fast))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'pure (s)':>10}  {'compiled (s)':>12}  {'speedup':>8}")
    for name, t_pure, t_fast in rows:
        print(f"{name:<{width}}  {t_pure:>10.4f}  {t_fast:>12.4f}  {t_pure / t_fast:>7.1f}x")


if __name__ == "__main__":
    main()
