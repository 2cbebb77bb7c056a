"""Parameter sweeps over the generator and trend statistics on the results."""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .entanglement import DEFAULT_MAX_ITER, DEFAULT_TOL, analyze
from .generator import GeneratorConfig, generate
from .network import connected_components

UNDEFINED = None


def parse_float_spec(spec: str) -> list[float]:
    """``"a,b,c"`` as a list, or ``"start:stop:step"`` with ``stop`` inclusive."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:step, got {spec!r}")
        start, stop, step = (float(x) for x in parts)
        if step <= 0:
            raise ValueError("range step must be positive")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 10) for i in range(max(count, 0))]
    return [float(x) for x in spec.split(",") if x.strip()]


def parse_int_list(spec: str) -> list[int]:
    return [int(x) for x in spec.split(",") if x.strip()]


@dataclass(frozen=True)
class SweepGrid:
    v_values: tuple[int, ...]
    k_values: tuple[int, ...]
    d_values: tuple[float, ...]
    seeds_per_cell: int = 1
    base_seed: int = 0

    def __post_init__(self):
        if any(not 0.0 <= d <= 1.0 for d in self.d_values):
            raise ValueError("all dropout values must lie in [0, 1]")
        if self.seeds_per_cell < 1:
            raise ValueError("seeds_per_cell must be at least 1")

    def __len__(self) -> int:
        return len(self.v_values) * len(self.k_values) * len(self.d_values) * self.seeds_per_cell

    def tasks(self) -> list[tuple[int, int, int, float, int]]:
        """``(task, v, k, d, seed)`` in task-index order."""
        cells = itertools.product(self.v_values, self.k_values, self.d_values, range(self.seeds_per_cell))
        return [(i, v, k, d, self.base_seed + i) for i, (v, k, d, _) in enumerate(cells)]


DESK_GRID = SweepGrid(
    v_values=(10, 25, 50, 100),
    k_values=(3, 5, 8, 10),
    d_values=tuple(parse_float_spec("0.001:0.9:0.01")),
    seeds_per_cell=1,
    base_seed=42,
)


@dataclass
class SweepRecord:
    task: int
    v: int
    k: int
    d: float
    seed: int
    layers_analyzed: int = 0
    nodes: int = 0
    edges: int = 0
    lambda_max: float = math.nan
    intensity: float = math.nan
    homogeneity: float = math.nan
    normalized_homogeneity: float = math.nan
    converged: bool = False
    status: str = "ok"
    gen_ms: float | None = None
    analyze_ms: float | None = None
    component_id: int = field(default=-1, repr=False)

    @property
    def ok(self) -> bool:
        return self.status == "ok"


SWEEP_CSV_HEADER = (
    "task,v,k,d,seed,layers_analyzed,nodes,edges,lambda_max,intensity,homogeneity,"
    "normalized_homogeneity,converged,status,gen_ms,analyze_ms"
)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return "nan" if math.isnan(x) else f"{x:.10g}"
    return str(x)


def record_csv_row(r: SweepRecord) -> str:
    names = SWEEP_CSV_HEADER.split(",")
    return ",".join(_fmt(getattr(r, n)) for n in names)


def _run_task(task, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, timings=False, all_components=False):
    idx, v, k, d, seed = task
    base = SweepRecord(task=idx, v=v, k=k, d=d, seed=seed)
    try:
        t0 = time.perf_counter()
        net = generate(GeneratorConfig(v=v, k=k, d=d, seed=seed))
        t1 = time.perf_counter()
        dec = connected_components(net)
        arr = net.edge_array()
        if arr.shape[0] == 0:
            base.status = "no_edges"
            return [base]
        with_edges = np.unique(dec.labels[arr[:, 1]])
        sizes = dec.sizes()[with_edges]
        # largest node count, ties to the smallest component id
        dominant = int(with_edges[np.argmax(sizes)])
        wanted = with_edges.tolist() if all_components else [dominant]
        results = analyze(net, tol=tol, max_iter=max_iter, strict=False, components=wanted)
        t2 = time.perf_counter()
    except Exception as exc:  # recorded per task, the sweep carries on
        base.status = "error: " + str(exc).replace(",", ";").replace("\n", " ")
        return [base]
    order = [dominant] + [c for c in wanted if c != dominant]
    by_cid = {r.component_id: r for r in results}
    out = []
    for cid in order:
        r = by_cid[cid]
        rec = SweepRecord(
            task=idx, v=v, k=k, d=d, seed=seed,
            layers_analyzed=r.num_layers,
            nodes=r.nodes,
            edges=r.edges,
            lambda_max=r.lambda_max,
            intensity=r.intensity,
            homogeneity=r.homogeneity,
            normalized_homogeneity=r.normalized_homogeneity,
            converged=r.converged,
            status="ok" if r.converged else "not_converged",
            component_id=cid,
        )
        if timings:
            rec.gen_ms = round((t1 - t0) * 1e3, 3)
            rec.analyze_ms = round((t2 - t1) * 1e3, 3)
        out.append(rec)
    return out


def _run_task_star(args):
    return _run_task(*args)


def run_sweep(
    grid: SweepGrid,
    jobs: int = 1,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    timings: bool = False,
    all_components: bool = False,
) -> list[SweepRecord]:
    """Generate and analyze every grid task; records come back in task order.

    Each task uses seed ``base_seed + task``.  With ``all_components`` every
    component with edges gets a record (dominant first); otherwise one record
    per task.  Wall-clock columns are filled only when ``timings`` is set, so
    default output is byte-reproducible.
    """
    payload = [(t, tol, max_iter, timings, all_components) for t in grid.tasks()]
    if jobs <= 1:
        chunks = map(_run_task_star, payload)
        return [rec for chunk in chunks for rec in chunk]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunks = pool.map(_run_task_star, payload, chunksize=max(1, len(payload) // (8 * jobs)))
        return [rec for chunk in chunks for rec in chunk]


@dataclass
class TrendSummary:
    n_records: int
    spearman_d_intensity: float | None
    spearman_d_homogeneity: float | None
    pearson_d_intensity: float | None
    # (k, d) -> (mean intensity, mean homogeneity, count)
    cell_means: dict[tuple[int, float], tuple[float, float, int]]


def _corr(fn, x, y):
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return UNDEFINED
    return float(fn(x, y)[0])


def trend_stats(records: list[SweepRecord]) -> TrendSummary:
    """Rank and linear correlations of dropout against the measures."""
    ok = [r for r in records if r.ok]
    if len(ok) < 10:
        raise ValueError(f"need at least 10 analysed records, got {len(ok)}")
    d = np.array([r.d for r in ok])
    inten = np.array([r.intensity for r in ok])
    homog = np.array([r.homogeneity for r in ok])
    cells: dict[tuple[int, float], list[SweepRecord]] = {}
    for r in ok:
        cells.setdefault((r.k, r.d), []).append(r)
    means = {
        key: (
            float(np.mean([r.intensity for r in rs])),
            float(np.mean([r.homogeneity for r in rs])),
            len(rs),
        )
        for key, rs in sorted(cells.items())
    }
    return TrendSummary(
        n_records=len(ok),
        spearman_d_intensity=_corr(stats.spearmanr, d, inten),
        spearman_d_homogeneity=_corr(stats.spearmanr, d, homog),
        pearson_d_intensity=_corr(stats.pearsonr, d, inten),
        cell_means=means,
    )
