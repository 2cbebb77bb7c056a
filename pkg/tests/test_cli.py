import os
import xml.etree.ElementTree as ET

import pytest

from multiplex_entanglement.cli import main

SUBCOMMANDS = ["analyze", "generate", "sweep", "stats", "plot"]


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def _rows(text):
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, ln.split(","))) for ln in lines[1:]]


@pytest.fixture
def toy_file(tmp_path):
    p = tmp_path / "toy.edges"
    p.write_text("A 1 2\nA 2 3\nB 1 2\n")
    return p


@pytest.mark.parametrize("cmd", SUBCOMMANDS)
def test_help(capsys, cmd):
    code, out, _ = run(capsys, cmd, "--help")
    assert code == 0
    assert "Usage:" in out
    if cmd in ("analyze", "sweep"):
        assert "default:" in out


def test_analyze_toy(capsys, toy_file):
    code, out, _ = run(capsys, "analyze", str(toy_file))
    assert code == 0
    (row,) = _rows(out)
    assert row["dataset"] == "toy"
    assert abs(float(row["homogeneity"]) - 0.985599) < 1e-6
    assert abs(float(row["intensity"]) - 0.853553) < 1e-6
    assert row["converged"] == "true"


def test_analyze_saturated(capsys, tmp_path):
    p = tmp_path / "sat.edges"
    p.write_text("".join(f"{layer} {a} {a + 1}\n" for layer in "XYZ" for a in range(4)))
    out_csv = tmp_path / "res.csv"
    code, _, _ = run(capsys, "analyze", str(p), "-o", str(out_csv))
    assert code == 0
    (row,) = _rows(out_csv.read_text())
    assert float(row["homogeneity"]) == pytest.approx(1.0, abs=1e-9)
    assert float(row["intensity"]) == pytest.approx(1.0, abs=1e-9)


def test_analyze_missing_file(capsys, tmp_path):
    out_csv = tmp_path / "never.csv"
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.edges"), "-o", str(out_csv))
    assert code == 1
    assert "no such file" in err
    assert not out_csv.exists()


def test_analyze_parse_error(capsys, tmp_path):
    p = tmp_path / "bad.edges"
    p.write_text("A 1 2\nbroken\n")
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 1 and ":2:" in err


def test_analyze_non_convergence_exit_code(capsys, tmp_path):
    p = tmp_path / "net.edges"
    p.write_text("A 1 2\nA 2 3\nB 1 2\n")
    code, out, _ = run(capsys, "analyze", str(p), "--max-iter", "2")
    assert code == 2
    assert _rows(out)[0]["converged"] == "false"


def test_unknown_flag_is_input_error(capsys):
    code, _, _ = run(capsys, "analyze", "--bogus")
    assert code == 1


def test_generate_and_stats(capsys, tmp_path):
    out = tmp_path / "g.edges"
    code, _, _ = run(capsys, "generate", "--nodes", "50", "--layers", "3", "--dropout", "0.7",
                     "--seed", "5", "--output", str(out))
    assert code == 0
    meta = dict(line.split("=", 1) for line in (tmp_path / "g.edges.meta").read_text().splitlines())
    assert meta["nodes"] == "50" and meta["seed"] == "5" and "PCG64" in meta["rng"]
    code, text, _ = run(capsys, "stats", str(out), "--header")
    assert code == 0
    (row,) = _rows(text)
    assert int(row["nodes"]) <= 3 * 50  # (node, layer) pairs with an edge
    assert row["edges"] == meta["edges"] and row["layers"] == "3"


def test_generate_is_byte_identical(capsys, tmp_path):
    for name in ("a", "b"):
        run(capsys, "generate", "--nodes", "40", "--layers", "4", "--dropout", "0.5",
            "--seed", "9", "--output", str(tmp_path / name))
    assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()
    assert (tmp_path / "a.meta").read_bytes() == (tmp_path / "b.meta").read_bytes()


def test_stats_row_only(capsys, toy_file):
    code, out, _ = run(capsys, "stats", str(toy_file), "--dataset", "Toy")
    assert code == 0
    # node-layer pairs A:{1,2,3} B:{1,2}; one component per layer
    assert out.strip() == "Toy,5,3,2,1.2,2"


def test_sweep_and_plot(capsys, tmp_path):
    csv_path = tmp_path / "sweep.csv"
    code, _, err = run(capsys, "sweep", "--nodes-list", "20,40", "--layers-list", "3,5",
                       "--dropout-range", "0.1:0.9:0.2", "--seed", "1", "--summary", "--output", str(csv_path))
    assert code == 0
    assert "spearman(d,I)" in err
    rows = _rows(csv_path.read_text())
    assert len(rows) == 20
    svg = tmp_path / "p.svg"
    code, _, _ = run(capsys, "plot", "--input", str(csv_path), "--color-by", "k", "--output", str(svg))
    assert code == 0
    root = ET.parse(svg).getroot()
    legend = root.find("{http://www.w3.org/2000/svg}g[@id='legend']")
    assert len([t for t in legend if t.get("data-category")]) == 2


def test_sweep_bad_range(capsys):
    code, _, _ = run(capsys, "sweep", "--dropout-range", "0:1", "--output", os.devnull)
    assert code == 1


def test_plot_unknown_column(capsys, tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("a,b\n1,2\n")
    code, _, err = run(capsys, "plot", "--input", str(p), "--x", "zzz", "--output", str(tmp_path / "o.svg"))
    assert code == 1 and "unknown column" in err
