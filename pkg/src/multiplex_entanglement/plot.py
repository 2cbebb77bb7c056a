"""Dependency-free SVG scatter plots of CSV columns."""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

WIDTH, HEIGHT = 800, 600
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 150, 30, 60
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


class PlotError(ValueError):
    pass


@dataclass(frozen=True)
class PlotSpec:
    input_csv: str | os.PathLike
    x: str
    y: str
    output_svg: str | os.PathLike
    color_by: str | None = None
    xlim: tuple[float, float] = (0.0, 1.0)
    ylim: tuple[float, float] = (0.0, 1.0)
    title: str | None = None


def _num(s: str) -> float:
    try:
        return float(s)
    except (TypeError, ValueError):
        return math.nan


def _category_key(value: str):
    f = _num(value)
    return (0, f, "") if math.isfinite(f) else (1, 0.0, value)


def _f(x: float) -> str:
    return f"{x:.2f}"


def render_scatter(
    xs: list[float],
    ys: list[float],
    categories: list[str] | None,
    spec: PlotSpec,
) -> str:
    """SVG text for the scatter; byte-identical for identical inputs."""
    x0, x1 = spec.xlim
    y0, y1 = spec.ylim
    if not (x1 > x0 and y1 > y0):
        raise PlotError("axis ranges must be increasing")
    pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(x):
        return MARGIN_LEFT + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return MARGIN_TOP + ph - (y - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect id="plot-area" x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black"/>',
    ]
    if spec.title:
        out.append(f'<text x="{WIDTH / 2:.2f}" y="{MARGIN_TOP - 10}" text-anchor="middle">{escape(spec.title)}</text>')

    ticks = 5
    for i in range(ticks + 1):
        tx = x0 + (x1 - x0) * i / ticks
        ty = y0 + (y1 - y0) * i / ticks
        px, py = sx(tx), sy(ty)
        bottom = MARGIN_TOP + ph
        out.append(f'<line x1="{_f(px)}" y1="{bottom}" x2="{_f(px)}" y2="{bottom + 5}" stroke="black"/>')
        out.append(f'<text x="{_f(px)}" y="{bottom + 18}" text-anchor="middle">{tx:.3g}</text>')
        out.append(f'<line x1="{MARGIN_LEFT - 5}" y1="{_f(py)}" x2="{MARGIN_LEFT}" y2="{_f(py)}" stroke="black"/>')
        out.append(f'<text x="{MARGIN_LEFT - 8}" y="{_f(py + 4)}" text-anchor="end">{ty:.3g}</text>')
    out.append(
        f'<text x="{_f(MARGIN_LEFT + pw / 2)}" y="{HEIGHT - 15}" text-anchor="middle">{escape(spec.x)}</text>'
    )
    cy = MARGIN_TOP + ph / 2
    out.append(
        f'<text x="18" y="{_f(cy)}" text-anchor="middle" transform="rotate(-90 18 {_f(cy)})">{escape(spec.y)}</text>'
    )

    colors: dict[str, str] = {}
    if categories is not None:
        for i, cat in enumerate(sorted(set(categories), key=_category_key)):
            colors[cat] = PALETTE[i % len(PALETTE)]

    out.append('<g id="points" fill-opacity="0.7">')
    for i, (x, y) in enumerate(zip(xs, ys)):
        fill = colors[categories[i]] if categories is not None else PALETTE[0]
        out.append(f'<circle cx="{_f(sx(x))}" cy="{_f(sy(y))}" r="3" fill="{fill}"/>')
    out.append("</g>")

    if colors:
        lx = WIDTH - MARGIN_RIGHT + 20
        out.append('<g id="legend">')
        out.append(f'<text x="{lx}" y="{MARGIN_TOP + 10}">{escape(spec.color_by or "")}</text>')
        for i, (cat, color) in enumerate(colors.items()):
            ly = MARGIN_TOP + 30 + 18 * i
            out.append(f'<circle cx="{lx + 5}" cy="{ly - 4}" r="5" fill="{color}"/>')
            out.append(f'<text x="{lx + 16}" y="{ly}" data-category={quoteattr(cat)}>{escape(cat)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def scatter_from_csv(spec: PlotSpec) -> int:
    """Write the SVG; returns the number of points drawn.

    Rows whose x or y is not a finite number (e.g. sweep tasks without
    edges) are skipped.
    """
    with open(spec.input_csv, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in (spec.x, spec.y) + ((spec.color_by,) if spec.color_by else ()):
            if col not in header:
                raise PlotError(f"unknown column {col!r}; available: {', '.join(header)}")
        xs, ys, cats = [], [], []
        for row in reader:
            x, y = _num(row[spec.x]), _num(row[spec.y])
            if not (math.isfinite(x) and math.isfinite(y)):
                continue
            xs.append(x)
            ys.append(y)
            if spec.color_by:
                cats.append(row[spec.color_by])
    svg = render_scatter(xs, ys, cats if spec.color_by else None, spec)
    with open(spec.output_svg, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    return len(xs)
