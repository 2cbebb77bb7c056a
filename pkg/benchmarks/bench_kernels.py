"""Time the numba kernels against their numpy/scipy twins.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel with the best-of-N wall time for each backend
and checks that both produce the same answer.  JIT compilation happens in
a warm-up call and is not timed.
"""

import argparse
import math
import time

import numpy as np

from multiplex_entanglement import kernels
from multiplex_entanglement.generator import GeneratorConfig, generate


def best_of(fn, repeat):
    fn()  # warm-up / compile
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cooccurrence_case():
    net = generate(GeneratorConfig(v=3000, k=8, d=0.97, seed=1))
    lay, u, v = net.layer_pairs()
    keys = u * np.int64(net.num_nodes) + v
    order = np.lexsort((lay, keys))
    args = (keys[order], lay[order], net.num_layers)
    return f"cooccurrence ({len(keys)} edges, 8 layers)", args, lambda a, b: np.array_equal(a, b)


def power_case():
    rng = np.random.default_rng(0)
    n = 60
    c = rng.uniform(0, 1, (n, n))
    np.fill_diagonal(c, 1.0)
    c /= c.max(axis=1, keepdims=True)
    args = (c, np.full(n, 1 / math.sqrt(n)), 1e-12, 100_000)
    return f"power iteration ({n}x{n})", args, lambda a, b: abs(a[0] - b[0]) < 1e-9


def components_case():
    rng = np.random.default_rng(1)
    n, m = 200_000, 150_000
    args = (n, rng.integers(0, n, m).astype(np.int64), rng.integers(0, n, m).astype(np.int64))
    return f"components ({n} nodes, {m} edges)", args, lambda a, b: a[1] == b[1] and np.array_equal(a[0], b[0])


def unrank_case():
    n = 20_000
    rng = np.random.default_rng(2)
    idx = np.sort(rng.integers(0, n * (n - 1) // 2, 1_000_000)).astype(np.int64)
    return f"unrank pairs (1e6 indices, n={n})", (idx, n), lambda a, b: all(np.array_equal(x, y) for x, y in zip(a, b))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    pairs = {
        cooccurrence_case: (kernels.cooccurrence_counts_numba, kernels.cooccurrence_counts_numpy),
        power_case: (kernels.power_iteration_numba, kernels.power_iteration_numpy),
        components_case: (kernels.component_labels_numba, kernels.component_labels_numpy),
        unrank_case: (kernels.unrank_pairs_numba, kernels.unrank_pairs_numpy),
    }
    print(f"{'kernel':45s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}  agree")
    for case, (fast, slow) in pairs.items():
        label, kargs, same = case()
        t_fast, out_fast = best_of(lambda: fast(*kargs), args.repeat)
        t_slow, out_slow = best_of(lambda: slow(*kargs), args.repeat)
        print(
            f"{label:45s} {t_fast * 1e3:10.3f} {t_slow * 1e3:10.3f} {t_slow / t_fast:8.2f}x  "
            f"{'yes' if same(out_fast, out_slow) else 'NO'}"
        )


if __name__ == "__main__":
    main()
