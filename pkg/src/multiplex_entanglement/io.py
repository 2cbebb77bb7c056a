"""Whitespace-delimited multiplex edge lists and Table-1 style summaries.

File layout, one edge per line::

    # comment
    <layer> <src> <dst> [weight]        (layer-first, the default)
    <src> <dst> <layer> [weight]        (src-first)

Nodes or layers that carry no edges are written as ``#! node <label>`` and
``#! layer <label>`` directives so that a write/parse round trip is exact.
Ordinary readers treat them as comments.
"""

from __future__ import annotations

import enum
import os
import warnings
from dataclasses import dataclass

import numpy as np

from .network import MultiplexNetwork, connected_components, node_layer_component_count, node_layer_pairs


class EdgeListFormat(str, enum.Enum):
    LAYER_FIRST = "layer-first"
    SRC_FIRST = "src-first"


class EdgeListError(ValueError):
    """Malformed edge-list content; ``lineno`` is 1-based."""

    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


_DIRECTIVE = "#!"


def parse_multiplex_edgelist(
    path: str | os.PathLike,
    fmt: EdgeListFormat | str = EdgeListFormat.LAYER_FIRST,
    directed: bool = False,
) -> MultiplexNetwork:
    fmt = EdgeListFormat(fmt)
    net = MultiplexNetwork(directed=directed)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith(_DIRECTIVE):
                _apply_directive(net, line[len(_DIRECTIVE):].split(), path, lineno)
                continue
            if line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) < 3 or len(tokens) > 4:
                raise EdgeListError(path, lineno, f"expected 3 or 4 fields, got {len(tokens)}")
            if fmt is EdgeListFormat.LAYER_FIRST:
                layer, src, dst = tokens[:3]
            else:
                src, dst, layer = tokens[:3]
            weight = 1.0
            if len(tokens) == 4:
                try:
                    weight = float(tokens[3])
                except ValueError:
                    raise EdgeListError(path, lineno, f"non-numeric weight {tokens[3]!r}") from None
            net.add_edge(src, dst, layer, weight)
    if net.num_edges == 0 and net.num_nodes == 0:
        warnings.warn(f"{path}: no edges found, returning an empty network", stacklevel=2)
    return net


def _apply_directive(net: MultiplexNetwork, tokens: list[str], path, lineno: int) -> None:
    if len(tokens) != 2:
        return  # free-form comment that happens to start with '#!'
    kind, label = tokens
    if kind == "node":
        net.add_node(label)
    elif kind == "layer":
        net.add_layer(label)


def _check_label(label: str) -> str:
    if not label or any(ch.isspace() for ch in label) or label.startswith("#"):
        raise ValueError(f"label {label!r} cannot be written to a whitespace-delimited edge list")
    return label


def write_multiplex_edgelist(
    net: MultiplexNetwork,
    path: str | os.PathLike,
    fmt: EdgeListFormat | str = EdgeListFormat.LAYER_FIRST,
) -> None:
    """Write edges sorted by layer id, then by index pair."""
    fmt = EdgeListFormat(fmt)
    nodes = [_check_label(x) for x in net.node_labels]
    layers = [_check_label(x) for x in net.layer_labels]
    arr = net.edge_array()
    weights = net.weights()
    order = np.lexsort((arr[:, 2], arr[:, 1], arr[:, 0])) if arr.shape[0] else np.zeros(0, dtype=np.int64)

    lines = [f"# multiplex edge list ({fmt.value}): "
             + ("layer src dst weight" if fmt is EdgeListFormat.LAYER_FIRST else "src dst layer weight")]
    used_layers = np.zeros(net.num_layers, dtype=bool)
    used_nodes = np.zeros(net.num_nodes, dtype=bool)
    if arr.shape[0]:
        used_layers[arr[:, 0]] = True
        used_nodes[arr[:, 1]] = True
        used_nodes[arr[:, 2]] = True
    lines.extend(f"{_DIRECTIVE} layer {layers[i]}" for i in np.flatnonzero(~used_layers).tolist())
    lines.extend(f"{_DIRECTIVE} node {nodes[i]}" for i in np.flatnonzero(~used_nodes).tolist())

    for row in order.tolist():
        lid, a, b = arr[row].tolist()
        w = repr(float(weights[row]))
        if fmt is EdgeListFormat.LAYER_FIRST:
            lines.append(f"{layers[lid]} {nodes[a]} {nodes[b]} {w}")
        else:
            lines.append(f"{nodes[a]} {nodes[b]} {layers[lid]} {w}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


@dataclass(frozen=True)
class NetworkSummary:
    """Table-1 style statistics.

    ``nodes`` counts (node, layer) pairs, i.e. each node once per layer in
    which it has an edge, and ``components`` counts connected components of
    that node-layer graph.  ``actors`` and ``aggregate_components`` give the
    distinct-node view.
    """

    nodes: int
    edges: int
    layers: int
    mean_degree: float
    components: int
    actors: int = 0
    aggregate_components: int = 0

    CSV_HEADER = "dataset,nodes,edges,layers,mean_degree,components"

    def csv_row(self, dataset: str) -> str:
        return f"{dataset},{self.nodes},{self.edges},{self.layers},{self.mean_degree:.10g},{self.components}"


def summarize(net: MultiplexNetwork) -> NetworkSummary:
    nodes, edges = int(node_layer_pairs(net).size), net.num_edges
    if nodes == 0:
        warnings.warn("mean degree undefined without edges; reporting 0", stacklevel=2)
        mean_degree = 0.0
    else:
        mean_degree = 2.0 * edges / nodes
    return NetworkSummary(
        nodes=nodes,
        edges=edges,
        layers=net.num_layers,
        mean_degree=mean_degree,
        components=node_layer_component_count(net),
        actors=net.num_nodes,
        aggregate_components=connected_components(net).count,
    )
