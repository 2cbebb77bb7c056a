"""Command line interface: ``mxent analyze|generate|sweep|stats|plot``.

Exit codes: 0 success, 1 input error, 2 numerical failure.
"""

from __future__ import annotations

import os
import sys
import warnings
from pathlib import Path

import click

from . import __version__
from .entanglement import DEFAULT_MAX_ITER, DEFAULT_TOL, RESULT_CSV_HEADER, analyze, result_csv_row
from .generator import GeneratorConfig, generate, write_metadata
from .io import EdgeListError, EdgeListFormat, NetworkSummary, parse_multiplex_edgelist, summarize, write_multiplex_edgelist
from .plot import PlotError, PlotSpec, scatter_from_csv
from .sweep import SWEEP_CSV_HEADER, SweepGrid, parse_float_spec, parse_int_list, record_csv_row, run_sweep, trend_stats

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2

FORMAT_CHOICE = click.Choice([f.value for f in EdgeListFormat])
_settings = dict(show_default=True)


def _fail(ctx: click.Context, message: str, code: int = EXIT_INPUT):
    click.echo(f"error: {message}", err=True)
    ctx.exit(code)


def _write_lines(path: str, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path == "-":
        click.echo(text, nl=False)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load(ctx, path: str, fmt: str, directed: bool):
    if not os.path.isfile(path):
        _fail(ctx, f"no such file: {path}")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return parse_multiplex_edgelist(path, fmt, directed=directed)
    except (EdgeListError, UnicodeDecodeError, OSError) as exc:
        _fail(ctx, str(exc))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="mxent")
def cli():
    """Layer entanglement of multiplex networks."""


@cli.command("analyze")
@click.argument("input_path", metavar="INPUT")
@click.option("--format", "fmt", type=FORMAT_CHOICE, default=EdgeListFormat.LAYER_FIRST.value, **_settings,
              help="Column order of the edge list.")
@click.option("--directed", is_flag=True, help="Keep edge orientation (affects edge counts only).")
@click.option("--tol", type=float, default=DEFAULT_TOL, **_settings, help="Power-iteration stopping distance.")
@click.option("--max-iter", type=int, default=DEFAULT_MAX_ITER, **_settings, help="Power-iteration step limit.")
@click.option("--dataset", default=None, help="Dataset name for the CSV (default: input file stem).")
@click.option("--per-block", is_flag=True, help="Also emit one row per LIN block for components whose LIN is disconnected.")
@click.option("-o", "--output", default="-", **_settings, help="Output CSV path, '-' for stdout.")
@click.pass_context
def cmd_analyze(ctx, input_path, fmt, directed, tol, max_iter, dataset, per_block, output):
    """Entanglement homogeneity and intensity per connected component.

    normalized_homogeneity maps homogeneity from [1/sqrt(L), 1] onto [0, 1]
    (toolkit definition).
    """
    net = _load(ctx, input_path, fmt, directed)
    if net.num_edges == 0:
        _fail(ctx, f"{input_path}: no edges to analyze")
    name = dataset or Path(input_path).stem
    try:
        results = analyze(net, tol=tol, max_iter=max_iter, per_block=per_block, strict=False)
    except ValueError as exc:
        _fail(ctx, str(exc), EXIT_NUMERIC)
    _write_lines(output, [RESULT_CSV_HEADER] + [result_csv_row(name, r) for r in results])
    bad = [r for r in results if not r.converged]
    if bad:
        _fail(ctx, f"{len(bad)} analysis unit(s) did not converge within {max_iter} iterations", EXIT_NUMERIC)
    ctx.exit(EXIT_OK)


@cli.command("generate")
@click.option("--nodes", "v", type=click.IntRange(min=1), required=True, help="Number of nodes.")
@click.option("--layers", "k", type=click.IntRange(min=1), required=True, help="Number of layers.")
@click.option("--dropout", "d", type=click.FloatRange(0.0, 1.0), required=True, help="Edge dropout d (p = 1 - d).")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, **_settings, help="Random seed.")
@click.option("--format", "fmt", type=FORMAT_CHOICE, default=EdgeListFormat.LAYER_FIRST.value, **_settings)
@click.option("--output", required=True, help="Edge-list path; metadata goes to PATH.meta.")
@click.pass_context
def cmd_generate(ctx, v, k, d, seed, fmt, output):
    """Write one synthetic multiplex and its metadata sidecar."""
    net = generate(GeneratorConfig(v=v, k=k, d=d, seed=seed))
    try:
        write_multiplex_edgelist(net, output, fmt)
        write_metadata(net, output + ".meta")
    except OSError as exc:
        _fail(ctx, str(exc))
    click.echo(f"wrote {net.num_edges} edges on {net.num_nodes} nodes, {net.num_layers} layers to {output}", err=True)
    ctx.exit(EXIT_OK)


@cli.command("sweep")
@click.option("--nodes-list", default="10,25,50,100", **_settings, help="Comma-separated node counts.")
@click.option("--layers-list", default="3,5,8,10", **_settings, help="Comma-separated layer counts.")
@click.option("--dropout-range", default="0.001:0.9:0.01", **_settings,
              help="start:stop:step (stop inclusive) or a comma-separated list.")
@click.option("--seeds-per-cell", type=click.IntRange(min=1), default=1, **_settings)
@click.option("--seed", type=click.IntRange(min=0), default=42, **_settings, help="Base seed; task i uses seed+i.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, **_settings, help="Worker processes.")
@click.option("--tol", type=float, default=DEFAULT_TOL, **_settings)
@click.option("--max-iter", type=int, default=DEFAULT_MAX_ITER, **_settings)
@click.option("--timings", is_flag=True, help="Fill gen_ms/analyze_ms (makes output run-dependent).")
@click.option("--all-components", is_flag=True, help="One row per component with edges instead of the dominant one.")
@click.option("--summary", is_flag=True, help="Print dropout trend statistics to stderr.")
@click.option("--output", default="-", **_settings, help="Output CSV path, '-' for stdout.")
@click.pass_context
def cmd_sweep(ctx, nodes_list, layers_list, dropout_range, seeds_per_cell, seed, jobs, tol, max_iter,
              timings, all_components, summary, output):
    """Generate and analyze a grid of synthetic multiplexes."""
    try:
        grid = SweepGrid(
            v_values=tuple(parse_int_list(nodes_list)),
            k_values=tuple(parse_int_list(layers_list)),
            d_values=tuple(parse_float_spec(dropout_range)),
            seeds_per_cell=seeds_per_cell,
            base_seed=seed,
        )
    except ValueError as exc:
        _fail(ctx, str(exc))
    records = run_sweep(grid, jobs=jobs, tol=tol, max_iter=max_iter, timings=timings, all_components=all_components)
    _write_lines(output, [SWEEP_CSV_HEADER] + [record_csv_row(r) for r in records])
    if summary:
        try:
            t = trend_stats(records)
            click.echo(
                f"records={t.n_records} spearman(d,I)={t.spearman_d_intensity} "
                f"spearman(d,H)={t.spearman_d_homogeneity} pearson(d,I)={t.pearson_d_intensity}",
                err=True,
            )
        except ValueError as exc:
            click.echo(f"trend statistics unavailable: {exc}", err=True)
    if any(r.status == "not_converged" for r in records):
        _fail(ctx, "some sweep tasks did not converge", EXIT_NUMERIC)
    ctx.exit(EXIT_OK)


@cli.command("stats")
@click.argument("inputs", nargs=-1, required=True, metavar="INPUT...")
@click.option("--format", "fmt", type=FORMAT_CHOICE, default=EdgeListFormat.LAYER_FIRST.value, **_settings)
@click.option("--directed", is_flag=True, help="Count (u,v) and (v,u) as distinct edges.")
@click.option("--dataset", default=None, help="Dataset name (single input only; default: file stem).")
@click.option("--header/--no-header", default=False, **_settings, help="Print the CSV header first.")
@click.pass_context
def cmd_stats(ctx, inputs, fmt, directed, dataset, header):
    """Print nodes, edges, layers, mean degree and component count as CSV."""
    lines = [NetworkSummary.CSV_HEADER] if header else []
    for path in inputs:
        net = _load(ctx, path, fmt, directed)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            s = summarize(net)
        lines.append(s.csv_row(dataset if dataset and len(inputs) == 1 else Path(path).stem))
    _write_lines("-", lines)
    ctx.exit(EXIT_OK)


def _range(text: str) -> tuple[float, float]:
    lo, hi = (float(x) for x in text.split(","))
    return lo, hi


@cli.command("plot")
@click.option("--input", "input_csv", required=True, help="CSV produced by analyze or sweep.")
@click.option("--x", "x", default="homogeneity", **_settings)
@click.option("--y", "y", default="intensity", **_settings)
@click.option("--color-by", default=None, help="Categorical column for colours and legend.")
@click.option("--xlim", default="0,1", **_settings, help="lo,hi")
@click.option("--ylim", default="0,1", **_settings, help="lo,hi")
@click.option("--title", default=None)
@click.option("--output", required=True, help="SVG path.")
@click.pass_context
def cmd_plot(ctx, input_csv, x, y, color_by, xlim, ylim, title, output):
    """Scatter two CSV columns into a self-contained 800x600 SVG."""
    if not os.path.isfile(input_csv):
        _fail(ctx, f"no such file: {input_csv}")
    try:
        spec = PlotSpec(input_csv, x, y, output, color_by, _range(xlim), _range(ylim), title)
        scatter_from_csv(spec)
    except (PlotError, ValueError, OSError) as exc:
        _fail(ctx, str(exc))
    ctx.exit(EXIT_OK)


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the exit code instead of the click defaults."""
    try:
        rv = cli.main(args=argv, prog_name="mxent", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_INPUT
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    return int(rv or 0)


if __name__ == "__main__":
    sys.exit(main())
