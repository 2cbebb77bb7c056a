"""Layer Interaction Network, layer entanglement, homogeneity and intensity.

Pipeline for one connected piece of a multiplex:

1. count, for every pair of layers, the node pairs joined in both
   (``n[l, l']``) and the edges of each layer (``n[l, l]``);
2. row-normalise into the overlap matrix ``c[l, l'] = n[l, l'] / n[l, l]``;
3. take the dominant right eigenpair ``(lambda, gamma)`` of ``c``;
4. homogeneity is the cosine between ``gamma`` and the all-ones vector,
   intensity is ``lambda / |L|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .network import MultiplexNetwork, connected_components, induce_component

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000
ORACLE_MAX_LAYERS = 12


class NoLayersError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, iterations: int, residual: float):
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(last step residual {residual:.3e})"
        )
        self.iterations = iterations
        self.residual = residual


@dataclass(frozen=True)
class LayerInteractionNetwork:
    """Symmetric layer-by-layer co-occurrence counts.

    ``layer_ids`` are indices into the source network's layer list; only
    layers with at least one edge are retained.
    """

    layer_ids: tuple[int, ...]
    layer_labels: tuple[str, ...]
    counts: np.ndarray

    @property
    def num_layers(self) -> int:
        return len(self.layer_ids)

    def blocks(self) -> list[np.ndarray]:
        """Connected blocks of the LIN as arrays of local layer positions."""
        a, b = np.nonzero(np.triu(self.counts, k=1))
        labels, count = kernels.component_labels(self.num_layers, a.astype(np.int64), b.astype(np.int64))
        labels = np.asarray(labels)
        return [np.flatnonzero(labels == i) for i in range(int(count))]


@dataclass(frozen=True)
class OverlapMatrix:
    layer_ids: tuple[int, ...]
    c: np.ndarray

    def submatrix(self, positions: np.ndarray) -> OverlapMatrix:
        ids = tuple(self.layer_ids[i] for i in positions.tolist())
        return OverlapMatrix(ids, self.c[np.ix_(positions, positions)])


@dataclass(frozen=True)
class EigenPair:
    lambda_max: float
    gamma: np.ndarray
    iterations: int
    residual: float
    converged: bool


@dataclass
class EntanglementResult:
    """Entanglement measures for one multiplex component (or one LIN block).

    ``normalized_homogeneity`` rescales ``homogeneity`` from its attainable
    range ``[1/sqrt(|L|), 1]`` onto ``[0, 1]``; this is the toolkit's own
    definition.
    """

    component_id: int
    lin_block_id: int
    layer_ids: tuple[int, ...]
    layer_labels: tuple[str, ...]
    nodes: int
    edges: int
    lambda_max: float
    gamma: np.ndarray
    homogeneity: float
    intensity: float
    normalized_homogeneity: float
    iterations: int
    converged: bool
    residual: float = 0.0
    kind: str = "component"
    lin_blocks: int = 1
    notes: dict[str, str] = field(default_factory=lambda: {"normalized_h": "toolkit definition"})

    @property
    def num_layers(self) -> int:
        return len(self.layer_ids)


# ---------------------------------------------------------------------------


def _lin_from_pairs(lay, u, v, n_nodes, layer_labels) -> LayerInteractionNetwork:
    present = np.unique(lay)
    if present.size == 0:
        raise NoLayersError("no layers: the network has no edges")
    remap = np.full(len(layer_labels), -1, dtype=np.int64)
    remap[present] = np.arange(present.size)
    lay_local = remap[lay]
    keys = u * np.int64(max(n_nodes, 1)) + v
    order = np.lexsort((lay_local, keys))
    counts = kernels.cooccurrence_counts(keys[order], lay_local[order], int(present.size))
    ids = tuple(present.tolist())
    return LayerInteractionNetwork(ids, tuple(layer_labels[i] for i in ids), np.asarray(counts))


def build_lin(net: MultiplexNetwork) -> LayerInteractionNetwork:
    """Co-occurrence counts over canonical node pairs, ignoring weights."""
    lay, u, v = net.layer_pairs()
    return _lin_from_pairs(lay, u, v, net.num_nodes, net.layer_labels)


def build_overlap_matrix(lin: LayerInteractionNetwork) -> OverlapMatrix:
    n = lin.counts.astype(np.float64)
    diag = np.diag(n).copy()
    if np.any(diag <= 0):
        raise ValueError("overlap matrix undefined: a layer has no edges")
    c = n / diag[:, None]
    np.fill_diagonal(c, 1.0)
    return OverlapMatrix(lin.layer_ids, c)


def _as_array(c) -> np.ndarray:
    arr = c.c if isinstance(c, OverlapMatrix) else c
    return np.ascontiguousarray(arr, dtype=np.float64)


def dominant_eigenpair(
    c: OverlapMatrix | np.ndarray,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    strict: bool = True,
) -> EigenPair:
    """Power iteration from the uniform start vector.

    Stops once successive unit iterates are closer than ``tol`` in L2;
    ``lambda`` is the Rayleigh quotient of the final iterate.  Raises
    :class:`ConvergenceError` after ``max_iter`` steps unless ``strict`` is
    false, in which case the last iterate is returned with
    ``converged=False``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    mat = _as_array(c)
    n = mat.shape[0]
    if n == 0 or mat.shape != (n, n):
        raise ValueError(f"expected a non-empty square matrix, got shape {mat.shape}")
    x0 = np.full(n, 1.0 / math.sqrt(n))
    lam, x, it, residual, converged = kernels.power_iteration(mat, x0, float(tol), int(max_iter))
    x = np.abs(np.asarray(x))  # iterates of a non-negative matrix stay in the positive orthant
    if not converged and strict:
        raise ConvergenceError(int(it), float(residual))
    return EigenPair(float(lam), x, int(it), float(residual), bool(converged))


def dense_eigen_oracle(c: OverlapMatrix | np.ndarray, max_squarings: int = 80) -> tuple[float, np.ndarray]:
    """Dominant eigenpair by repeated squaring, for cross-checking.

    ``C^(2^s)`` approaches the rank-one Perron projector, so its row sums
    give the eigenvector direction; ``lambda = ||C gamma||``.
    """
    mat = _as_array(c)
    n = mat.shape[0]
    if n > ORACLE_MAX_LAYERS:
        raise ValueError(f"oracle limited to {ORACLE_MAX_LAYERS} layers, got {n}")
    m = mat / mat.max()
    for _ in range(max_squarings):
        nxt = m @ m
        nxt /= nxt.max()
        if np.max(np.abs(nxt - m)) < 1e-15:
            m = nxt
            break
        m = nxt
    gamma = m.sum(axis=1)
    gamma /= np.linalg.norm(gamma)
    lam = float(np.linalg.norm(mat @ gamma))
    return lam, gamma


def homogeneity(gamma: np.ndarray) -> float:
    g = np.asarray(gamma, dtype=np.float64)
    norm = np.linalg.norm(g)
    if g.size == 0 or norm == 0.0:
        raise ValueError("homogeneity undefined for a zero vector")
    return min(float(g.sum() / (math.sqrt(g.size) * norm)), 1.0)


def intensity(lambda_max: float, num_layers: int) -> float:
    return lambda_max / num_layers


def normalized_homogeneity(h: float, num_layers: int) -> float:
    if num_layers <= 1:
        return 1.0
    root = math.sqrt(num_layers)
    return min(max((h * root - 1.0) / (root - 1.0), 0.0), 1.0)


# ---------------------------------------------------------------------------


def _pick_block(pairs: list[tuple[np.ndarray, EigenPair]], layer_ids: tuple[int, ...]) -> int:
    # largest lambda; ties -> more layers -> smallest layer id
    def key(i):
        pos, ep = pairs[i]
        return (-round(ep.lambda_max, 12), -pos.size, layer_ids[int(pos.min())])

    return min(range(len(pairs)), key=key)


def _analyze_connected(
    sub: MultiplexNetwork, cid: int, tol: float, max_iter: int, per_block: bool, strict: bool
) -> list[EntanglementResult]:
    lin = build_lin(sub)
    overlap = build_overlap_matrix(lin)
    # layer ids reported against the original network, not the induced copy
    to_source = sub.metadata.get("source_layer_ids")
    src_ids = tuple(to_source[i] for i in lin.layer_ids) if to_source is not None else lin.layer_ids
    blocks = lin.blocks() if lin.num_layers > 1 else [np.zeros(1, dtype=np.int64)]
    pairs = [(pos, dominant_eigenpair(overlap.c[np.ix_(pos, pos)], tol, max_iter, strict)) for pos in blocks]
    best = _pick_block(pairs, src_ids)
    L = lin.num_layers
    nodes, edges = sub.num_nodes, sub.num_edges

    def make(pos, ep, block_id, width, kind):
        gamma = np.zeros(width)
        gamma[pos if kind == "component" else np.arange(pos.size)] = ep.gamma
        h = homogeneity(gamma)
        ids = src_ids if kind == "component" else tuple(src_ids[i] for i in pos.tolist())
        labels = lin.layer_labels if kind == "component" else tuple(lin.layer_labels[i] for i in pos.tolist())
        return EntanglementResult(
            component_id=cid,
            lin_block_id=block_id,
            layer_ids=ids,
            layer_labels=labels,
            nodes=nodes,
            edges=edges,
            lambda_max=ep.lambda_max,
            gamma=gamma,
            homogeneity=h,
            intensity=intensity(ep.lambda_max, width),
            normalized_homogeneity=normalized_homogeneity(h, width),
            iterations=ep.iterations,
            converged=ep.converged,
            residual=ep.residual,
            kind=kind,
            lin_blocks=len(blocks),
        )

    pos, ep = pairs[best]
    rows = [make(pos, ep, best, L, "component")]
    if per_block and len(blocks) > 1:
        for b, (pos, ep) in enumerate(pairs):
            rows.append(make(pos, ep, b, pos.size, "block"))
    return rows


def analyze(
    net: MultiplexNetwork,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    per_block: bool = False,
    strict: bool = True,
    components: list[int] | None = None,
) -> list[EntanglementResult]:
    """Entanglement measures for every connected component with edges.

    Components are those of the aggregated graph; isolated nodes carry no
    edges and yield no row.  When a component's LIN splits into several
    blocks, the block with the largest eigenvalue is reported with ``gamma``
    zero-padded to all of the component's layers.  ``per_block=True`` adds
    one ``kind="block"`` row per block for such components.
    """
    dec = connected_components(net)
    edge_arr = net.edge_array()
    has_edges = np.zeros(dec.count, dtype=bool)
    if edge_arr.shape[0]:
        has_edges[dec.labels[edge_arr[:, 1]]] = True
    wanted = range(dec.count) if components is None else components
    rows: list[EntanglementResult] = []
    for cid in wanted:
        if not has_edges[cid]:
            continue
        if dec.count == 1 and np.all(net.layer_edge_counts() > 0):
            sub = net
        else:
            sub = induce_component(net, cid, dec)
        rows.extend(_analyze_connected(sub, cid, tol, max_iter, per_block, strict))
    return rows


RESULT_CSV_HEADER = (
    "dataset,component_id,lin_block_id,layers,nodes,edges,lambda_max,intensity,"
    "homogeneity,normalized_homogeneity,iterations,converged"
)


def _g(x: float) -> str:
    return f"{x:.10g}"


def result_csv_row(dataset: str, r: EntanglementResult) -> str:
    return ",".join(
        [
            dataset,
            str(r.component_id),
            str(r.lin_block_id),
            str(r.num_layers),
            str(r.nodes),
            str(r.edges),
            _g(r.lambda_max),
            _g(r.intensity),
            _g(r.homogeneity),
            _g(r.normalized_homogeneity),
            str(r.iterations),
            "true" if r.converged else "false",
        ]
    )
