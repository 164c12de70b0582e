"""CLI round trips: build/verify bundle layout, integrity check, sweep CSV."""
import json

import numpy as np
import pytest

from spanlab.cli import SWEEP_COLUMNS, SWEEP_SCHEMA, main
from spanlab.metric import generate_points, load_metric, save_metric


def _build(tmp_path, *extra, points="gen:uniform:n=32", seed="4"):
    out = tmp_path / "bundle"
    argv = ["build", "--points", points, "--rho", "2", "--eps", "0.5",
            "--out", str(out), "--seed", seed, *extra]
    assert main(argv) == 0
    return out


def test_build_writes_bundle(tmp_path, capsys):
    out = _build(tmp_path)
    for name in ("points.txt", "config.json", "edges.txt", "metrics.json"):
        assert (out / name).exists(), name
    cfg = json.loads((out / "config.json").read_text())
    assert cfg["mode"] == "strict" and cfg["seed"] == 4 and cfg["rho"] == 2
    metrics = json.loads((out / "metrics.json").read_text())
    assert metrics["n"] == 32
    assert metrics["edges"] == len((out / "edges.txt").read_text().splitlines())
    # the seed flag reached the generator
    stored = load_metric(str(out / "points.txt"))
    want = generate_points("uniform", 32, seed=4)
    assert np.array_equal(stored.coords, want.coords)
    assert "built" in capsys.readouterr().out


def test_verify_roundtrip_ok(tmp_path, capsys):
    out = _build(tmp_path)
    assert main(["verify", "--bundle", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["ok"] is True
    names = [e["name"] for e in report["entries"]]
    assert "bundle-integrity" in names
    assert "verdict: OK" in capsys.readouterr().out


def test_verify_catches_tampered_edges(tmp_path, capsys):
    out = _build(tmp_path)
    edges = out / "edges.txt"
    lines = edges.read_text().splitlines()
    edges.write_text("\n".join(lines[1:]) + "\n")
    assert main(["verify", "--bundle", str(out)]) == 1
    report = json.loads((out / "report.json").read_text())
    assert report["ok"] is False
    bad = [e for e in report["entries"] if e["name"] == "bundle-integrity"]
    assert bad[0]["status"] == "fail"
    capsys.readouterr()


def test_build_explore_gamma(tmp_path):
    out = _build(tmp_path, "--mode", "explore:4")
    cfg = json.loads((out / "config.json").read_text())
    assert cfg["mode"] == "explore" and cfg["gamma"] == 4
    assert main(["verify", "--bundle", str(out)]) == 0


def test_build_from_points_file(tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    save_metric(generate_points("grid", 16), str(pts))
    out = _build(tmp_path, points=str(pts))
    stored = load_metric(str(out / "points.txt"))
    assert stored.n == 16
    capsys.readouterr()


def test_sweep_csv_layout(tmp_path, capsys):
    csv = tmp_path / "sweep.csv"
    assert main(["sweep", "--n", "16,32", "--reps", "2",
                 "--out", str(csv)]) == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == f"# {SWEEP_SCHEMA}"
    assert lines[1] == ",".join(SWEEP_COLUMNS)
    rows = [dict(zip(SWEEP_COLUMNS, ln.split(","))) for ln in lines[2:]]
    assert [r["n"] for r in rows] == ["16", "16", "32", "32"]
    for r in rows:
        assert r["status"] == "ok"
        assert int(r["edges"]) > 0
        assert float(r["lightness"]) >= 1.0
        assert float(r["stretch"]) <= 2.0 + 1e-9
        assert r["mode"] == "strict"
    capsys.readouterr()


def test_sweep_stdout_and_row_errors(tmp_path, capsys):
    # theta needs k >= 7, so theta:6 fails per-row without killing the sweep
    assert main(["sweep", "--n", "8", "--basic", "theta:6,complete",
                 "--out", "-"]) == 0
    outerr = capsys.readouterr()
    lines = outerr.out.splitlines()
    rows = [dict(zip(SWEEP_COLUMNS, ln.split(","))) for ln in lines[2:]]
    assert [r["status"] for r in rows] == ["ParseError", "ok"]
    bad = rows[0]
    assert bad["edges"] == "" and bad["stretch"] == ""
    assert bad["n"] == "8" and bad["mode"] == "strict"


def test_cli_error_exits(tmp_path, capsys):
    # missing points file -> SpanlabError path -> exit 1
    assert main(["build", "--points", str(tmp_path / "nope.txt"),
                 "--rho", "2", "--eps", "0.5",
                 "--out", str(tmp_path / "b")]) == 1
    assert "error:" in capsys.readouterr().err
    # strict mode takes no parameter
    assert main(["build", "--points", "gen:uniform:n=8", "--rho", "2",
                 "--eps", "0.5", "--mode", "strict:2",
                 "--out", str(tmp_path / "b2")]) == 1
    capsys.readouterr()
    # argparse usage errors exit 2
    with pytest.raises(SystemExit) as exc:
        main(["build"])
    assert exc.value.code == 2
    capsys.readouterr()
