import json

import pytest

from quadratic_twist_series.cli import main
from quadratic_twist_series.export import report_from_dict
from quadratic_twist_series.objects import RootSet, SumReport, TwistTriple


def _run(capsys, *argv):
    status = main([*argv, "--quiet"])
    return status, capsys.readouterr()


def test_sum_command(capsys):
    status, captured = _run(
        capsys, "sum", "--curve", "0,-1,0", "--series", "S", "--j", "1", "--k", "1", "--box", "2"
    )
    assert status == 0
    report = report_from_dict(json.loads(captured.out), SumReport)
    assert report.value == pytest.approx(4 / 3)
    assert report.params == {"curve": [0, -1, 0], "j": 1.0, "k": 1.0, "N": 2, "window": ""}


def test_sum_q_series(capsys):
    status, captured = _run(capsys, "sum", "--curve", "0,0,-2", "--series", "Q", "--B", "1")
    assert status == 0
    report = json.loads(captured.out)
    assert report["value"] == 1.0
    assert report["params"]["curve"] == [0, 0, -2]
    assert report["params"]["membership"] == "strict_psi"


def test_omega_command(capsys):
    status, captured = _run(capsys, "omega", "--curve", "0,-1,0", "--d", "2")
    assert status == 0
    document = json.loads(captured.out)
    assert document["curve"] == [0, -1, 0]
    assert document["command"] == "omega"
    assert document["params"] == {"d": 2}
    assert report_from_dict(document["result"], RootSet) == RootSet(d=2, residues=(0, 1, 3))


def test_reduce_and_decompose_commands(capsys):
    status, captured = _run(
        capsys, "reduce", "--curve", "0,0,-2", "--alpha", "3", "--d", "5", "--d-prime", "1"
    )
    assert status == 0
    document = json.loads(captured.out)
    assert document["curve"] == [0, 0, -2]
    assert document["params"] == {"alpha": 3, "d": 5, "d_prime": 1}
    assert document["result"]["omega"] == [3, 1]
    status, captured = _run(
        capsys, "decompose", "--curve", "0,-1,0", "--u", "3", "--v", "1", "--t", "2"
    )
    assert status == 0
    document = json.loads(captured.out)
    assert document["params"] == {"u": 3, "v": 1, "t": 2}
    assert report_from_dict(document["result"], TwistTriple) == TwistTriple(3, 2, 1)


def test_rank_command_json(capsys):
    status, captured = _run(capsys, "rank", "--curve", "0,-1,0", "--box", "3", "--top", "2")
    assert status == 0
    document = json.loads(captured.out)
    assert document["params"] == {"box": 3, "window": "", "top": 2}
    assert document["total_pairs"] == 12
    assert [(row["D"], row["count"]) for row in document["result"]] == [(6, 4), (-6, 4)]


def test_rank_command_csv(capsys, tmp_path):
    path = tmp_path / "rank.csv"
    status, _ = _run(
        capsys, "rank", "--curve", "0,-1,0", "--box", "3", "--format", "csv", "--output", str(path)
    )
    assert status == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "D,count,sample_witnesses,sample_points"
    assert lines[1].startswith("6,4,(2 1) (3 1) (-1 2) (-1 3),")


def test_degenerate_curve_exits_with_config_error(capsys):
    status, captured = _run(capsys, "sum", "--curve", "0,0,0", "--box", "5")
    assert status == 2
    assert "repeated root" in captured.err


def test_invalid_parameter_exits_with_config_error(capsys):
    status, captured = _run(capsys, "sum", "--curve", "0,-1,0", "--k", "0.5")
    assert status == 2
    assert "invalid k" in captured.err


def test_domain_error_exits_with_one(capsys):
    status, _ = _run(capsys, "decompose", "--curve", "0,-1,0", "--u", "3", "--v", "1", "--t", "3")
    assert status == 1


def test_stats_command(capsys):
    status, captured = _run(
        capsys, "stats", "--curve", "0,0,-2", "--B", "5,10", "--replicates", "2", "--T", "50"
    )
    assert status == 0
    document = json.loads(captured.out)
    assert [row["B"] for row in document["result"]] == [5, 10]
    assert document["bound"]["T"] == 50
    assert document["curve"] == [0, 0, -2]
    assert document["params"]["seed"] == 20240611
    assert document["model"]["seed"] == 20240611


def test_verify_report_records_tolerance(capsys, monkeypatch):
    monkeypatch.setattr(
        "quadratic_twist_series.cli.run_verification",
        lambda curve, workers, zeta_tolerance: {
            "curve": list(curve.coefficients),
            "passed": True,
            "checks": [],
            "first_counterexample": None,
        },
    )
    status, captured = _run(capsys, "verify", "--curve", "0,0,-2", "--zeta-tolerance", "1e-8")
    assert status == 0
    assert json.loads(captured.out)["params"] == {"zeta_tolerance": 1e-8}
