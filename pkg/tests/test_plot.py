import xml.etree.ElementTree as ET

import pytest

from multiplex_entanglement.plot import (
    HEIGHT,
    MARGIN_BOTTOM,
    MARGIN_LEFT,
    MARGIN_RIGHT,
    MARGIN_TOP,
    WIDTH,
    PlotError,
    PlotSpec,
    scatter_from_csv,
)

NS = "{http://www.w3.org/2000/svg}"

CSV = """task,k,homogeneity,intensity,status
0,3,0.9,0.5,ok
1,5,0.95,0.3,ok
2,3,1.0,1.0,ok
3,8,0.6,0.2,ok
4,5,nan,nan,no_edges
"""


def _plot(tmp_path, text=CSV, **kw):
    src = tmp_path / "in.csv"
    src.write_text(text)
    out = tmp_path / "out.svg"
    spec = PlotSpec(src, kw.pop("x", "homogeneity"), kw.pop("y", "intensity"), out, **kw)
    n = scatter_from_csv(spec)
    return n, out


def _points(svg_path):
    root = ET.parse(svg_path).getroot()
    group = root.find(f"{NS}g[@id='points']")
    return [(float(c.get("cx")), float(c.get("cy"))) for c in group.findall(f"{NS}circle")]


def test_one_circle_per_finite_row_inside_plot_area(tmp_path):
    n, out = _plot(tmp_path)
    pts = _points(out)
    assert n == len(pts) == 4
    for x, y in pts:
        assert MARGIN_LEFT <= x <= WIDTH - MARGIN_RIGHT
        assert MARGIN_TOP <= y <= HEIGHT - MARGIN_BOTTOM


def test_header_only(tmp_path):
    n, out = _plot(tmp_path, text="homogeneity,intensity\n")
    assert n == 0
    assert _points(out) == []
    root = ET.parse(out).getroot()
    assert root.get("width") == "800" and root.get("height") == "600"


def test_legend_entries(tmp_path):
    _, out = _plot(tmp_path, color_by="k")
    root = ET.parse(out).getroot()
    legend = root.find(f"{NS}g[@id='legend']")
    cats = [t.get("data-category") for t in legend.findall(f"{NS}text") if t.get("data-category")]
    assert cats == ["3", "5", "8"]


def test_unknown_column(tmp_path):
    with pytest.raises(PlotError):
        _plot(tmp_path, x="nope")


def test_deterministic_and_self_contained(tmp_path):
    _, out = _plot(tmp_path, color_by="k", title="H & I")
    first = out.read_bytes()
    _, out = _plot(tmp_path, color_by="k", title="H & I")
    assert out.read_bytes() == first
    text = first.decode()
    assert "href" not in text and "<image" not in text
    ET.fromstring(first)  # well-formed
