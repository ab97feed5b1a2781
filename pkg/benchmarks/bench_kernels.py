"""Time the numba and numpy kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

The first numba call includes compilation and is reported separately.
"""

import argparse
import time

import numpy as np

from nonassoc._kernels import numba_impl, numpy_impl


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(rng):
    for p, shape in ((2, (64, 64)), (3, (200, 120)), (65521, (120, 120))):
        m = rng.integers(0, p, size=shape).astype(np.int64)
        yield f"rref_modp p={p} {shape[0]}x{shape[1]}", "rref_modp", (m, p)
    for p, n, b in ((2, 3, 1 << 16), (3, 4, 1 << 16), (5, 8, 1 << 14)):
        c = rng.integers(0, p, size=(n, n, n)).astype(np.int64)
        u = rng.integers(0, p, size=(b, n)).astype(np.int64)
        v = rng.integers(0, p, size=(b, n)).astype(np.int64)
        yield f"batch_mul p={p} dim={n} batch={b}", "batch_mul", (u, v, c, p)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    if numba_impl is None:
        print("numba is not importable; timing the numpy kernels only")
    print(f"{'case':40s} {'numpy':>10s} {'numba':>10s} {'compile':>10s} {'speedup':>8s}")
    for label, name, inputs in cases(rng):
        np_fn = getattr(numpy_impl, name)
        t_np = _best(lambda: np_fn(*(x.copy() if isinstance(x, np.ndarray) else x for x in inputs)), args.repeat)
        if numba_impl is None:
            print(f"{label:40s} {t_np * 1e3:9.2f}ms")
            continue
        nb_fn = getattr(numba_impl, name)
        t0 = time.perf_counter()
        expected = nb_fn(*(x.copy() if isinstance(x, np.ndarray) else x for x in inputs))
        first = time.perf_counter() - t0
        got = np_fn(*(x.copy() if isinstance(x, np.ndarray) else x for x in inputs))
        same = all(np.array_equal(a, b) for a, b in zip(expected, got)) if isinstance(got, tuple) else np.array_equal(expected, got)
        if not same:
            raise SystemExit(f"{label}: kernels disagree")
        t_nb = _best(lambda: nb_fn(*(x.copy() if isinstance(x, np.ndarray) else x for x in inputs)), args.repeat)
        print(f"{label:40s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms {first * 1e3:9.1f}ms {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
