"""Command-line interface: pinned outputs, exit codes, figure rendering."""

import json

import pytest

from hivecluster.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_lr_pinned(capsys):
    code, out = run(capsys, "lr", "--lambda", "3,2,1", "--mu", "2,1", "--nu", "2,1", "--method", "all", "--plain")
    assert code == 0
    assert out.strip() == "2 2 2"


def test_mutate_pinned(capsys):
    code, out = run(capsys, "mutate", "--n", "5", "--seq", "(1,3),(2,1),(1,1),(1,2)", "--show", "mutable-part", "--plain")
    assert code == 0
    assert out.strip() == "D6"


def test_cone_rays_pinned(capsys):
    code, out = run(capsys, "cone", "--n", "4", "--what", "g", "--rays", "--plain")
    assert code == 0
    assert len(out.strip().splitlines()) == 18


def test_json_default(capsys):
    code, out = run(capsys, "quiver", "--n", "4")
    assert code == 0
    data = json.loads(out)
    assert data["vertices"] == 12 and data["mutable"] == 3


def test_polytope_count_matches_lr(capsys):
    code, out = run(capsys, "polytope", "--n", "4", "--sigma=-1,-1,0;-1,-1,0;-1,-1,-1;3", "--count", "--plain")
    assert code == 0
    assert out.strip() == "2"


def test_cluster_vars_counts(capsys):
    code, out = run(capsys, "cluster-vars", "--n", "4", "--plain")
    assert code == 0
    head = out.strip().splitlines()[0].split("\t")
    assert head[0] == "9" and head[1] == "14" and head[2] == "complete"


def test_schofield_seed_echoed(capsys):
    code, out = run(capsys, "schofield", "--n", "3", "--check", "exchange", "--seed", "42")
    assert code == 0
    assert json.loads(out)["seed"] == 42


def test_usage_error_exit_2(capsys):
    assert main(["mutate", "--n", "4", "--seq", "(0,1)"]) == 2


def test_figure_rendered(tmp_path, capsys):
    fig = tmp_path / "quiver.png"
    code, _ = run(capsys, "quiver", "--n", "4", "--figure", str(fig), "--plain")
    assert code == 0
    assert fig.stat().st_size > 0


def test_out_writes_report_and_figure(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code, _ = run(capsys, "mutate", "--n", "4", "--seq", "(1,1)", "--out", str(out_file))
    assert code == 0
    data = json.loads(out_file.read_text())
    assert data["dynkin_mutable_part"]
    assert (tmp_path / "report.png").stat().st_size > 0
