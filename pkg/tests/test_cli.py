"""End-to-end runs of the command-line interface."""

import csv

from sfcindex.cli import main
from sfcindex import read_points, read_queries


def test_gen_and_replay_pipeline(tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    qs = tmp_path / "qs.txt"
    out = tmp_path / "results.csv"
    assert main([
        "gen", "--dist", "clustered", "--n", "400", "--omega", "8", "--seed", "3",
        "--out", str(pts), "--queries", "20", "--queries-out", str(qs),
    ]) == 0
    dom, points = read_points(pts)
    assert len(points) == 400 and dom.omega == 8
    assert len(read_queries(qs)) == 20

    assert main([
        "replay", "--points", str(pts), "--queries", str(qs),
        "--structure", "curve-z-dyn", "--out", str(out),
    ]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 1
    assert rows[0]["phase"] == "replay"
    assert rows[0]["queries"] == "20"


def test_gen_binary_format(tmp_path):
    pts = tmp_path / "pts.bin"
    assert main([
        "gen", "--n", "100", "--omega", "16", "--out", str(pts), "--format", "binary",
    ]) == 0
    dom, points = read_points(pts)
    assert dom.omega == 16 and len(points) == 100


def test_bench_static_writes_csv(tmp_path):
    out = tmp_path / "results.csv"
    assert main([
        "bench-static", "--structure", "curve-z", "--dist", "uniform",
        "--n", "200", "--omega", "8", "--rho", "0.05", "--seed", "1",
        "--runs", "2", "--batch", "16", "--limit-seconds", "0.01",
        "--out", str(out),
    ]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 6  # 2 builds + 2 queries + 2 medians
    assert {r["phase"] for r in rows} == {"build", "query"}


def test_bench_dynamic_writes_csv(tmp_path):
    out = tmp_path / "results.csv"
    assert main([
        "bench-dynamic", "--structure", "curve-h-dyn", "--n", "150",
        "--omega", "8", "--runs", "1", "--batch", "16",
        "--limit-seconds", "0.01", "--out", str(out),
    ]) == 0
    rows = list(csv.DictReader(out.open()))
    assert {r["phase"] for r in rows} == {"insert", "query"}


def test_selftest_passes(capsys):
    assert main(["selftest", "--trials", "6"]) == 0
    assert "selftest: ok" in capsys.readouterr().out
