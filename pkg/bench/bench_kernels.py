"""Compare the numba kernels with their pure-Python/numpy fallbacks.

Run: python3 bench/bench_kernels.py [--repeat R]
The numba versions are called once before timing so compilation is excluded.
"""

import argparse
import random
import time

import numpy as np

from ksplit import _kernels
from ksplit._kernels import boundary_matrix_numpy, max_flow_python


def random_graph(n: int, m: int, cap: int, seed: int):
    rng = random.Random(seed)
    ea, eb = [], []
    for v in range(1, n):  # spanning path keeps s-t connected
        ea.append(v - 1)
        eb.append(v)
    while len(ea) < m:
        a, b = rng.sample(range(n), 2)
        ea.append(a)
        eb.append(b)
    caps = [rng.randint(1, cap) for _ in ea]
    return np.array(ea, np.int64), np.array(eb, np.int64), np.array(caps, np.int64)


def timed(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.max_flow_jit is None:
        raise SystemExit("numba backend disabled (KSPLIT_DISABLE_NUMBA); nothing to compare")
    boundary_jit = _kernels.boundary_matrix_jit
    print(f"{'kernel':<10} {'size':>14} {'fallback s':>11} {'numba s':>10} {'speedup':>8}")
    for n, m in [(50, 200), (200, 1000), (1000, 6000)]:
        ea, eb, cap = random_graph(n, m, 100, seed=n)
        want = max_flow_python(n, ea, eb, cap, 0, n - 1)
        got = _kernels.max_flow_jit(n, ea, eb, cap, 0, n - 1)
        assert want[0] == got[0] and np.array_equal(want[1], got[1])
        slow = timed(lambda: max_flow_python(n, ea, eb, cap, 0, n - 1), args.repeat)
        fast = timed(lambda: _kernels.max_flow_jit(n, ea, eb, cap, 0, n - 1), args.repeat)
        print(f"{'max_flow':<10} {f'n={n} m={m}':>14} {slow:11.5f} {fast:10.5f} {slow / fast:8.1f}")

    for n, m in [(10, 20), (14, 30), (17, 40)]:
        ea, eb, _ = random_graph(n, m, 1, seed=n)
        masks = np.arange(1 << (n - 1), dtype=np.int64)
        assert np.array_equal(boundary_matrix_numpy(n, ea, eb, masks), boundary_jit(n, ea, eb, masks))
        slow = timed(lambda: boundary_matrix_numpy(n, ea, eb, masks), args.repeat)
        fast = timed(lambda: boundary_jit(n, ea, eb, masks), args.repeat)
        print(f"{'boundary':<10} {f'n={n} m={m}':>14} {slow:11.5f} {fast:10.5f} {slow / fast:8.1f}")


if __name__ == "__main__":
    main()
