"""In-memory multiplex network with layer-aware edge storage."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator

import numpy as np

from . import kernels


@dataclass(frozen=True)
class ComponentDecomposition:
    """Connected components of the aggregated graph.

    ``labels[i]`` is the component of node ``i``; components are numbered in
    order of their smallest node index.
    """

    labels: np.ndarray
    count: int

    def nodes_of(self, cid: int) -> np.ndarray:
        if not 0 <= cid < self.count:
            raise KeyError(f"unknown component id {cid}")
        return np.flatnonzero(self.labels == cid)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.count)


class MultiplexNetwork:
    """Nodes shared across layers, one edge set per layer.

    Node and layer labels are strings; internal ids are dense integers
    assigned by first appearance.  Undirected edges are stored as canonical
    ``(min, max)`` index pairs.  With ``directed=True`` the orientation is
    kept, which only affects edge counts in summaries; entanglement and
    components always work on unordered pairs.
    """

    def __init__(self, directed: bool = False):
        self.directed = directed
        self._node_labels: list[str] = []
        self._node_index: dict[str, int] = {}
        self._layer_labels: list[str] = []
        self._layer_index: dict[str, int] = {}
        # (layer, u, v) -> weight, insertion ordered
        self._edges: dict[tuple[int, int, int], float] = {}
        self._cache: np.ndarray | None = None
        self.metadata: dict[str, object] = {}

    # -- construction -----------------------------------------------------

    def add_node(self, label: Hashable) -> int:
        key = str(label)
        idx = self._node_index.get(key)
        if idx is None:
            idx = len(self._node_labels)
            self._node_index[key] = idx
            self._node_labels.append(key)
        return idx

    def add_layer(self, label: Hashable) -> int:
        key = str(label)
        idx = self._layer_index.get(key)
        if idx is None:
            idx = len(self._layer_labels)
            self._layer_index[key] = idx
            self._layer_labels.append(key)
        return idx

    def add_edge(self, u: Hashable, v: Hashable, layer: Hashable, weight: float = 1.0) -> MultiplexNetwork:
        """Add ``u -- v`` on ``layer``; re-adding an existing edge is a no-op."""
        a = self.add_node(u)
        b = self.add_node(v)
        lid = self.add_layer(layer)
        if not self.directed and a > b:
            a, b = b, a
        key = (lid, a, b)
        if key not in self._edges:
            self._edges[key] = float(weight)
            self._cache = None
        return self

    @classmethod
    def from_arrays(
        cls,
        node_labels: Iterable[Hashable],
        layer_labels: Iterable[Hashable],
        u: np.ndarray,
        v: np.ndarray,
        layer: np.ndarray,
        weight: np.ndarray | None = None,
        directed: bool = False,
    ) -> MultiplexNetwork:
        """Bulk constructor from index arrays into the given label lists."""
        net = cls(directed=directed)
        for lab in node_labels:
            net.add_node(lab)
        for lab in layer_labels:
            net.add_layer(lab)
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        layer = np.asarray(layer, dtype=np.int64)
        if u.size and (u.max() >= net.num_nodes or v.max() >= net.num_nodes or layer.max() >= net.num_layers):
            raise ValueError("edge index outside the supplied label lists")
        if not directed:
            u, v = np.minimum(u, v), np.maximum(u, v)
        w = np.ones(u.shape[0]) if weight is None else np.asarray(weight, dtype=np.float64)
        keys = zip(layer.tolist(), u.tolist(), v.tolist())
        edges: dict[tuple[int, int, int], float] = {}
        for key, wt in zip(keys, w.tolist()):
            edges.setdefault(key, wt)
        net._edges = edges
        return net

    # -- basic accessors ----------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return len(self._node_labels)

    @property
    def num_layers(self) -> int:
        return len(self._layer_labels)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def node_labels(self) -> list[str]:
        return list(self._node_labels)

    @property
    def layer_labels(self) -> list[str]:
        return list(self._layer_labels)

    def node_index(self, label: Hashable) -> int:
        return self._node_index[str(label)]

    def layer_index(self, label: Hashable) -> int:
        return self._layer_index[str(label)]

    def layer_edge_counts(self) -> np.ndarray:
        arr = self.edge_array()
        return np.bincount(arr[:, 0], minlength=self.num_layers)

    def edges(self) -> Iterator[tuple[int, int, int, float]]:
        """Yield ``(layer, u, v, weight)`` in insertion order."""
        for (lid, a, b), w in self._edges.items():
            yield lid, a, b, w

    def edge_array(self) -> np.ndarray:
        """``(m, 3)`` int64 array of ``layer, u, v`` rows in insertion order."""
        if self._cache is None:
            if self._edges:
                self._cache = np.array(list(self._edges.keys()), dtype=np.int64).reshape(-1, 3)
            else:
                self._cache = np.zeros((0, 3), dtype=np.int64)
        return self._cache

    def weights(self) -> np.ndarray:
        return np.fromiter(self._edges.values(), dtype=np.float64, count=len(self._edges))

    def has_edge(self, u: Hashable, v: Hashable, layer: Hashable) -> bool:
        try:
            a, b, lid = self.node_index(u), self.node_index(v), self.layer_index(layer)
        except KeyError:
            return False
        if not self.directed and a > b:
            a, b = b, a
        return (lid, a, b) in self._edges

    def layer_pairs(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Unique ``(layer, u, v)`` with ``u <= v``, ignoring orientation."""
        arr = self.edge_array()
        if arr.shape[0] == 0:
            z = np.zeros(0, dtype=np.int64)
            return z, z, z
        lay = arr[:, 0]
        u = np.minimum(arr[:, 1], arr[:, 2])
        v = np.maximum(arr[:, 1], arr[:, 2])
        if self.directed:
            stacked = np.unique(np.stack([lay, u, v], axis=1), axis=0)
            lay, u, v = stacked[:, 0], stacked[:, 1], stacked[:, 2]
        return lay, u, v

    # -- comparison -----------------------------------------------------------

    def _label_view(self):
        nodes, layers = self._node_labels, self._layer_labels
        edges = set()
        for (lid, a, b), w in self._edges.items():
            x, y = nodes[a], nodes[b]
            if not self.directed and y < x:
                x, y = y, x
            edges.add((layers[lid], x, y, w))
        return (self.directed, frozenset(nodes), frozenset(layers), frozenset(edges))

    def __eq__(self, other: object) -> bool:
        """Label-based equality; internal index order is irrelevant."""
        if not isinstance(other, MultiplexNetwork):
            return NotImplemented
        return self._label_view() == other._label_view()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (
            f"MultiplexNetwork(nodes={self.num_nodes}, edges={self.num_edges}, "
            f"layers={self.num_layers}, directed={self.directed})"
        )


def add_edge(net: MultiplexNetwork, u: Hashable, v: Hashable, layer: Hashable, weight: float = 1.0) -> MultiplexNetwork:
    return net.add_edge(u, v, layer, weight)


def aggregate_graph(net: MultiplexNetwork) -> set[tuple[int, int]]:
    """Union of all layers as a set of unordered ``(u, v)`` index pairs."""
    _, u, v = net.layer_pairs()
    return set(zip(u.tolist(), v.tolist()))


def connected_components(net: MultiplexNetwork) -> ComponentDecomposition:
    _, u, v = net.layer_pairs()
    labels, count = kernels.component_labels(net.num_nodes, u, v)
    return ComponentDecomposition(labels=np.asarray(labels, dtype=np.int64), count=int(count))


def induce_component(
    net: MultiplexNetwork, cid: int, decomposition: ComponentDecomposition | None = None
) -> MultiplexNetwork:
    """Sub-network on the nodes of component ``cid``.

    Layers left without edges are dropped, so every layer of the result has
    ``n_ll >= 1``.  Relative node and layer order is preserved.
    """
    dec = decomposition if decomposition is not None else connected_components(net)
    members = dec.nodes_of(cid)
    keep = np.zeros(net.num_nodes, dtype=bool)
    keep[members] = True
    arr = net.edge_array()
    mask = keep[arr[:, 1]] if arr.shape[0] else np.zeros(0, dtype=bool)
    sub = arr[mask]
    weights = net.weights()[mask]

    node_map = np.full(net.num_nodes, -1, dtype=np.int64)
    node_map[members] = np.arange(members.size)
    used_layers = np.unique(sub[:, 0])
    layer_map = np.full(max(net.num_layers, 1), -1, dtype=np.int64)
    layer_map[used_layers] = np.arange(used_layers.size)

    node_labels = net.node_labels
    layer_labels = net.layer_labels
    out = MultiplexNetwork.from_arrays(
        [node_labels[i] for i in members.tolist()],
        [layer_labels[i] for i in used_layers.tolist()],
        node_map[sub[:, 1]],
        node_map[sub[:, 2]],
        layer_map[sub[:, 0]],
        weights,
        directed=net.directed,
    )
    out.metadata["component_id"] = cid
    out.metadata["source_layer_ids"] = used_layers.tolist()
    return out


def node_layer_pairs(net: MultiplexNetwork) -> np.ndarray:
    """Sorted unique ``layer * num_nodes + node`` keys of nodes active in a layer."""
    arr = net.edge_array()
    if arr.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    n = np.int64(net.num_nodes)
    return np.unique(np.concatenate([arr[:, 0] * n + arr[:, 1], arr[:, 0] * n + arr[:, 2]]))


def node_layer_component_count(net: MultiplexNetwork) -> int:
    """Components of the graph on (node, layer) pairs, with no inter-layer links."""
    keys = node_layer_pairs(net)
    if keys.size == 0:
        return 0
    arr = net.edge_array()
    n = np.int64(net.num_nodes)
    u = np.searchsorted(keys, arr[:, 0] * n + arr[:, 1])
    v = np.searchsorted(keys, arr[:, 0] * n + arr[:, 2])
    _, count = kernels.component_labels(int(keys.size), u.astype(np.int64), v.astype(np.int64))
    return int(count)
