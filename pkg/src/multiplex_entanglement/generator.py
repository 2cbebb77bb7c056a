"""Random multiplex generator: random layer membership plus thinned cliques.

Every node joins a uniformly sized, uniformly chosen subset of the ``k``
layers.  Each layer is then the clique on its members with every pair kept
independently with probability ``p = 1 - d``.  The clique is never
materialised: kept pairs are found by jumping geometric gaps along the
lexicographic pair index, so work scales with the number of kept edges.

Randomness comes from numpy's PCG64 seeded through ``SeedSequence(seed)``;
the sequence is spawned into one child stream for the layer assignment and
one per layer for sampling, so layers can be sampled in any order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .network import MultiplexNetwork

RNG_ALGORITHM = "numpy.PCG64 via SeedSequence.spawn (stream 0: assignment, stream 1+l: layer l)"


@dataclass(frozen=True)
class GeneratorConfig:
    v: int
    k: int
    d: float
    seed: int = 0

    def __post_init__(self):
        if self.v < 1 or self.k < 1:
            raise ValueError("need at least one node and one layer")
        if not 0.0 <= self.d <= 1.0:
            raise ValueError(f"dropout must lie in [0, 1], got {self.d}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a non-negative 64-bit integer")

    @property
    def p(self) -> float:
        return 1.0 - self.d


@dataclass(frozen=True)
class LayerAssignment:
    """Boolean ``(v, k)`` membership matrix."""

    membership: np.ndarray

    @property
    def num_nodes(self) -> int:
        return self.membership.shape[0]

    @property
    def num_layers(self) -> int:
        return self.membership.shape[1]

    def layers_of(self, node: int) -> np.ndarray:
        return np.flatnonzero(self.membership[node])

    def nodes_in(self, layer: int) -> np.ndarray:
        return np.flatnonzero(self.membership[:, layer])

    def layer_sizes(self) -> np.ndarray:
        return self.membership.sum(axis=0)


def _streams(seed: int, k: int) -> list[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(k + 1)
    return [np.random.Generator(np.random.PCG64(s)) for s in children]


def assign_layers(v: int, k: int, rng: np.random.Generator) -> LayerAssignment:
    sizes = rng.integers(1, k + 1, size=v)
    # ranks of iid uniforms form a uniform permutation per row
    ranks = np.argsort(np.argsort(rng.random((v, k)), axis=1), axis=1)
    return LayerAssignment(ranks < sizes[:, None])


def pair_index_to_nodes(idx: int, n: int) -> tuple[int, int]:
    total = n * (n - 1) // 2
    if not 0 <= idx < total:
        raise IndexError(f"pair index {idx} out of range for {n} nodes")
    i, j = kernels.unrank_pairs(np.array([idx], dtype=np.int64), n)
    return int(i[0]), int(j[0])


def nodes_to_pair_index(i: int, j: int, n: int) -> int:
    if i > j:
        i, j = j, i
    if not 0 <= i < j < n:
        raise IndexError(f"({i}, {j}) is not a pair of distinct nodes below {n}")
    return kernels.rank_pair(i, j, n)


class PairCounter:
    """Counts candidate pair positions drawn while sampling."""

    def __init__(self):
        self.examined = 0


def skip_sample_indices(
    total: int, p: float, rng: np.random.Generator, counter: PairCounter | None = None
) -> np.ndarray:
    """Sorted indices in ``range(total)``, each kept independently with prob. ``p``.

    Gaps between kept indices are geometric; uniforms are drawn in chunks
    sized to the expected count plus a few standard deviations.
    """
    if total <= 0 or p <= 0.0:
        return np.zeros(0, dtype=np.int64)
    if p >= 1.0:
        if counter is not None:
            counter.examined += total
        return np.arange(total, dtype=np.int64)
    log_q = math.log1p(-p)
    expected = total * p
    chunk = int(expected + 4.0 * math.sqrt(expected) + 16)
    pieces = []
    pos = -1
    while True:
        u = 1.0 - rng.random(chunk)  # (0, 1]
        if counter is not None:
            counter.examined += chunk
        gaps = np.floor(np.log(u) / log_q)
        np.minimum(gaps, float(total), out=gaps)
        positions = pos + np.cumsum(gaps.astype(np.int64) + 1)
        cut = int(np.searchsorted(positions, total))
        pieces.append(positions[:cut])
        if cut < chunk:
            break
        pos = int(positions[-1])
        chunk = int(4.0 * math.sqrt(expected) + 16)
    return np.concatenate(pieces)


def sample_layer_edges(
    layer_nodes: np.ndarray, p: float, rng: np.random.Generator, counter: PairCounter | None = None
) -> np.ndarray:
    """``(m, 2)`` array of kept pairs from the clique on ``layer_nodes``."""
    nodes = np.asarray(layer_nodes, dtype=np.int64)
    n = nodes.size
    idx = skip_sample_indices(n * (n - 1) // 2, p, rng, counter)
    i, j = kernels.unrank_pairs(idx, n)
    return np.stack([nodes[np.asarray(i)], nodes[np.asarray(j)]], axis=1)


def theoretical_edge_bound(v: int, k: int) -> int:
    if v < 1 or k < 1:
        raise ValueError("v and k must be positive")
    return k * v * (v - 1) // 2


def generate_from_assignment(
    assignment: LayerAssignment, d: float, layer_rngs: list[np.random.Generator], counter: PairCounter | None = None
) -> MultiplexNetwork:
    """Sample every layer of a fixed assignment; one RNG per layer."""
    p = 1.0 - d
    us, vs, ls = [], [], []
    for layer in range(assignment.num_layers):
        pairs = sample_layer_edges(assignment.nodes_in(layer), p, layer_rngs[layer], counter)
        us.append(pairs[:, 0])
        vs.append(pairs[:, 1])
        ls.append(np.full(pairs.shape[0], layer, dtype=np.int64))
    return MultiplexNetwork.from_arrays(
        [str(i) for i in range(assignment.num_nodes)],
        [str(layer) for layer in range(assignment.num_layers)],
        np.concatenate(us),
        np.concatenate(vs),
        np.concatenate(ls),
    )


def generate(cfg: GeneratorConfig, counter: PairCounter | None = None) -> MultiplexNetwork:
    """Build one synthetic multiplex; a pure function of ``cfg``.

    Nodes that lose all their edges to dropout remain in the node set.
    """
    counter = counter if counter is not None else PairCounter()
    streams = _streams(cfg.seed, cfg.k)
    assignment = assign_layers(cfg.v, cfg.k, streams[0])
    net = generate_from_assignment(assignment, cfg.d, streams[1:], counter)
    net.metadata.update(
        nodes=cfg.v,
        layers=cfg.k,
        dropout=cfg.d,
        seed=cfg.seed,
        rng=RNG_ALGORITHM,
        edges=net.num_edges,
        examined_pairs=counter.examined,
    )
    return net


def write_metadata(net: MultiplexNetwork, path) -> None:
    keys = ("nodes", "layers", "dropout", "seed", "rng", "edges")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key in keys:
            fh.write(f"{key}={net.metadata[key]}\n")
