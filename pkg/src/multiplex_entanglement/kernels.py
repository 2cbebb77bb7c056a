"""Hot numeric kernels, each with a numba loop and a numpy/scipy twin.

The module-level names (``cooccurrence_counts``, ``power_iteration``,
``component_labels``, ``unrank_pairs``) dispatch to the numba variants when
:data:`._accel.USE_NUMBA` is true.  Both variants are always importable as
``<name>_numba`` / ``<name>_numpy`` so tests and the benchmark can compare
them directly.
"""

import math

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from ._accel import USE_NUMBA, njit

# ---------------------------------------------------------------------------
# Layer co-occurrence counting
# ---------------------------------------------------------------------------


@njit
def cooccurrence_counts_numba(pair_keys, layers, n_layers):
    # pair_keys sorted ascending; (key, layer) rows unique
    counts = np.zeros((n_layers, n_layers), dtype=np.int64)
    m = pair_keys.shape[0]
    start = 0
    while start < m:
        stop = start + 1
        while stop < m and pair_keys[stop] == pair_keys[start]:
            stop += 1
        for a in range(start, stop):
            la = layers[a]
            counts[la, la] += 1
            for b in range(a + 1, stop):
                lb = layers[b]
                counts[la, lb] += 1
                counts[lb, la] += 1
        start = stop
    return counts


def cooccurrence_counts_numpy(pair_keys, layers, n_layers):
    """Count layer co-occurrences as ``B.T @ B`` for the pair-by-layer incidence ``B``."""
    m = pair_keys.shape[0]
    if m == 0:
        return np.zeros((n_layers, n_layers), dtype=np.int64)
    _, pair_idx = np.unique(pair_keys, return_inverse=True)
    pair_idx = pair_idx.reshape(-1)
    incidence = sparse.csr_matrix(
        (np.ones(m, dtype=np.int64), (pair_idx, layers)),
        shape=(int(pair_idx.max()) + 1, n_layers),
    )
    return np.asarray((incidence.T @ incidence).toarray(), dtype=np.int64)


# ---------------------------------------------------------------------------
# Dominant eigenpair by power iteration
# ---------------------------------------------------------------------------


@njit
def power_iteration_numba(c, x0, tol, max_iter):
    n = c.shape[0]
    x = x0.copy()
    y = np.empty(n)
    residual = np.inf
    it = 0
    converged = False
    while it < max_iter:
        it += 1
        norm = 0.0
        for i in range(n):
            s = 0.0
            for j in range(n):
                s += c[i, j] * x[j]
            y[i] = s
            norm += s * s
        norm = math.sqrt(norm)
        if norm == 0.0:
            break
        residual = 0.0
        for i in range(n):
            y[i] /= norm
            diff = y[i] - x[i]
            residual += diff * diff
        residual = math.sqrt(residual)
        for i in range(n):
            x[i] = y[i]
        if residual < tol:
            converged = True
            break
    lam = 0.0
    for i in range(n):
        s = 0.0
        for j in range(n):
            s += c[i, j] * x[j]
        lam += x[i] * s
    return lam, x, it, residual, converged


def power_iteration_numpy(c, x0, tol, max_iter):
    x = np.array(x0, dtype=np.float64, copy=True)
    residual = np.inf
    it = 0
    converged = False
    while it < max_iter:
        it += 1
        y = c @ x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            break
        y /= norm
        residual = float(np.linalg.norm(y - x))
        x = y
        if residual < tol:
            converged = True
            break
    lam = float(x @ (c @ x))
    return lam, x, it, residual, converged


# ---------------------------------------------------------------------------
# Connected components
# ---------------------------------------------------------------------------


@njit
def _find(parent, a):
    root = a
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


@njit
def component_labels_numba(n_nodes, u, v):
    parent = np.arange(n_nodes)
    for e in range(u.shape[0]):
        ra = _find(parent, u[e])
        rb = _find(parent, v[e])
        if ra != rb:
            # smaller root wins so that roots are component minima
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    labels = np.empty(n_nodes, dtype=np.int64)
    root_label = np.full(n_nodes, -1, dtype=np.int64)
    count = 0
    for i in range(n_nodes):
        r = _find(parent, i)
        if root_label[r] < 0:
            root_label[r] = count
            count += 1
        labels[i] = root_label[r]
    return labels, count


def component_labels_numpy(n_nodes, u, v):
    """Component label per node, numbered by smallest member node index."""
    if n_nodes == 0:
        return np.zeros(0, dtype=np.int64), 0
    adj = sparse.coo_matrix(
        (np.ones(u.shape[0], dtype=np.int8), (u, v)), shape=(n_nodes, n_nodes)
    ).tocsr()
    count, raw = csgraph.connected_components(adj, directed=False)
    _, first = np.unique(raw, return_index=True)
    order = np.argsort(first, kind="stable")
    remap = np.empty(count, dtype=np.int64)
    remap[order] = np.arange(count)
    return remap[raw].astype(np.int64), int(count)


# ---------------------------------------------------------------------------
# Linear pair index <-> unordered node pair (lexicographic, i < j)
# ---------------------------------------------------------------------------


@njit
def _pairs_before(i, n):
    return i * (2 * n - i - 1) // 2


@njit
def unrank_pairs_numba(idx, n):
    m = idx.shape[0]
    first = np.empty(m, dtype=np.int64)
    second = np.empty(m, dtype=np.int64)
    b = 2.0 * n - 1.0
    for t in range(m):
        k = idx[t]
        i = int(math.floor((b - math.sqrt(b * b - 8.0 * k)) / 2.0))
        if i < 0:
            i = 0
        while i > 0 and _pairs_before(i, n) > k:
            i -= 1
        while _pairs_before(i + 1, n) <= k:
            i += 1
        first[t] = i
        second[t] = k - _pairs_before(i, n) + i + 1
    return first, second


def unrank_pairs_numpy(idx, n):
    idx = np.asarray(idx, dtype=np.int64)
    b = 2.0 * n - 1.0
    i = np.floor((b - np.sqrt(np.maximum(b * b - 8.0 * idx, 0.0))) / 2.0).astype(np.int64)
    np.clip(i, 0, max(n - 2, 0), out=i)

    def before(r):
        return r * (2 * n - r - 1) // 2

    # float estimate is off by at most a few near perfect squares
    for _ in range(4):
        hi = before(i) > idx
        i[hi] -= 1
        lo = before(i + 1) <= idx
        i[lo] += 1
    return i, idx - before(i) + i + 1


def rank_pair(i: int, j: int, n: int) -> int:
    """Linear index of the unordered pair ``i < j`` among ``n`` nodes."""
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


if USE_NUMBA:
    cooccurrence_counts = cooccurrence_counts_numba
    power_iteration = power_iteration_numba
    component_labels = component_labels_numba
    unrank_pairs = unrank_pairs_numba
else:
    cooccurrence_counts = cooccurrence_counts_numpy
    power_iteration = power_iteration_numpy
    component_labels = component_labels_numpy
    unrank_pairs = unrank_pairs_numpy
