import math

import numpy as np
import pytest

from multiplex_entanglement.sweep import (
    DESK_GRID,
    SWEEP_CSV_HEADER,
    SweepGrid,
    SweepRecord,
    parse_float_spec,
    parse_int_list,
    record_csv_row,
    run_sweep,
    trend_stats,
)


def test_parse_specs():
    assert parse_float_spec("0.05:0.95:0.05") == [round(0.05 * i, 10) for i in range(1, 20)]
    assert parse_float_spec("0.001,0.9,0.01") == [0.001, 0.9, 0.01]
    assert len(parse_float_spec("0.001:0.9:0.01")) == 90
    assert parse_int_list("10, 25,50") == [10, 25, 50]
    with pytest.raises(ValueError):
        parse_float_spec("0:1")
    with pytest.raises(ValueError):
        parse_float_spec("0:1:0")


def test_grid_validation_and_size():
    with pytest.raises(ValueError):
        SweepGrid((10,), (3,), (1.2,))
    g = SweepGrid((10, 20), (3, 4, 5), (0.1, 0.2), seeds_per_cell=2, base_seed=100)
    assert len(g) == 24
    tasks = g.tasks()
    assert [t[0] for t in tasks] == list(range(24))
    assert tasks[5] == (5, 10, 4, 0.1, 105)
    assert len({t[1:4] + (t[0] % 2,) for t in tasks}) == 24
    assert len(DESK_GRID) == 4 * 4 * 90


def test_single_task():
    (r,) = run_sweep(SweepGrid((10,), (3,), (0.5,)))
    assert r.ok
    assert 1 / 3 <= r.intensity <= 1


def test_no_edges_status():
    (r,) = run_sweep(SweepGrid((5,), (2,), (1.0,)))
    assert r.status == "no_edges"
    assert math.isnan(r.intensity)
    assert record_csv_row(r).split(",")[13] == "no_edges"


def test_desk_grid_all_converged():
    grid = SweepGrid((25, 50, 100, 250), (3, 5, 8, 10), tuple(parse_float_spec("0:0.95:0.05")), 1, 7)
    records = run_sweep(grid)
    assert len(records) == 320
    assert all(r.ok and r.converged for r in records)
    for r in records:
        assert 1 / r.layers_analyzed - 1e-12 <= r.intensity <= 1 + 1e-12
        assert 1 / math.sqrt(r.layers_analyzed) - 1e-12 <= r.homogeneity <= 1
    h = np.array([r.homogeneity for r in records])
    assert (h > 0.9).mean() > (h < 0.5).mean()


def test_parallel_matches_serial():
    grid = SweepGrid((20, 40), (3, 4), (0.2, 0.6, 0.9), seeds_per_cell=2, base_seed=3)
    a = run_sweep(grid, jobs=1)
    b = run_sweep(grid, jobs=2)
    assert [record_csv_row(r) for r in a] == [record_csv_row(r) for r in b]


def test_timings_only_on_request():
    grid = SweepGrid((20,), (3,), (0.5,))
    (plain,) = run_sweep(grid)
    assert plain.gen_ms is None and record_csv_row(plain).endswith(",,")
    (timed,) = run_sweep(grid, timings=True)
    assert timed.gen_ms is not None and timed.analyze_ms is not None


def test_all_components_rows():
    grid = SweepGrid((40,), (3,), (0.97,), base_seed=1)
    rows = run_sweep(grid, all_components=True)
    (dominant,) = run_sweep(grid)
    assert rows[0].component_id == dominant.component_id
    assert all(r.task == 0 for r in rows)
    assert len(rows) >= 1
    assert max(r.nodes for r in rows) == rows[0].nodes


def test_csv_header_fixed():
    assert SWEEP_CSV_HEADER == (
        "task,v,k,d,seed,layers_analyzed,nodes,edges,lambda_max,intensity,homogeneity,"
        "normalized_homogeneity,converged,status,gen_ms,analyze_ms"
    )


def _fake(ds, intens, k=5):
    return [
        SweepRecord(task=i, v=10, k=k, d=d, seed=i, intensity=x, homogeneity=0.9, converged=True)
        for i, (d, x) in enumerate(zip(ds, intens))
    ]


def test_trend_monotone():
    ds = np.linspace(0.05, 0.95, 19)
    t = trend_stats(_fake(ds, 1 - ds))
    assert t.spearman_d_intensity == pytest.approx(-1.0)
    assert t.pearson_d_intensity == pytest.approx(-1.0)
    assert t.spearman_d_homogeneity is None  # constant homogeneity


def test_trend_constant_dropout_undefined():
    t = trend_stats(_fake([0.3] * 12, np.linspace(0.2, 0.9, 12)))
    assert t.spearman_d_intensity is None
    assert t.pearson_d_intensity is None


def test_trend_needs_records():
    with pytest.raises(ValueError):
        trend_stats(_fake([0.1, 0.2], [0.5, 0.4]))


def test_trend_cell_means():
    recs = _fake([0.1, 0.1, 0.2] * 4, [0.8, 0.6, 0.5] * 4)
    t = trend_stats(recs)
    assert t.cell_means[(5, 0.1)] == (pytest.approx(0.7), pytest.approx(0.9), 8)
    assert t.cell_means[(5, 0.2)][2] == 4
