import json
import subprocess
import sys

import pytest

from pfjanossy import cli, config


def write(tmp_path, raw, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return str(path)


def base_raw():
    return {
        "space": {"points": [0, 1, 2, 3, 4, 5]},
        "ensemble": {"family": "beta1", "n": 2},
        "interval": [2, 3],
    }


def check(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def compute(tmp_path, cfg, *extra):
    out = tmp_path / "out.json"
    code = cli.main(["compute", "--config", cfg, "--out", str(out), *extra])
    return code, (json.loads(out.read_text()) if code == 0 else None)


@pytest.mark.parametrize("name", config.bundled_names())
def test_bundled_configs_pass(name, capsys):
    code, report = check(["check", "--config", name], capsys)
    assert code == 0 and report["passed"]
    for r in report["checks"]:
        if r["status"] == "pass":
            assert r["deviation"] <= r["tolerance"] <= 1e-8


def test_full_interval_reports_expected_singular(capsys):
    code, report = check(["check", "--config", "beta1-m6-n2-full-interval"], capsys)
    assert code == 0
    last = report["checks"][-1]
    assert last["status"] == "expected-singular"
    assert "SingularComplementMoment" in last["detail"]


def test_failing_check_exits_one(capsys):
    code, report = check(["check", "--config", "beta1-m6-n2", "--tol", "1e-300"], capsys)
    assert code == 1 and not report["passed"]


@pytest.mark.parametrize("mutate", [
    lambda r: r.update(bogus=1),
    lambda r: r["ensemble"].update(family="beta3"),
    lambda r: r["ensemble"].pop("n"),
    lambda r: r.update(interval=[9]),
    lambda r: r["space"].update(weights=[1.0]),
    lambda r: r["ensemble"].update(omega={"kind": "gaussian", "sigma": 1.0}),
])
def test_malformed_config_exits_two(tmp_path, capsys, mutate):
    raw = base_raw()
    mutate(raw)
    assert cli.main(["check", "--config", write(tmp_path, raw)]) == 2
    assert "config error" in capsys.readouterr().err


def test_missing_file_and_bad_json_exit_two(tmp_path):
    assert cli.main(["check", "--config", str(tmp_path / "nope.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["check", "--config", str(bad)]) == 2
    assert cli.main(["frobnicate"]) == 2


def test_singular_moment_exits_three(tmp_path):
    raw = {"space": {"points": [0, 1, 2]},
           "ensemble": {"family": "custom", "n": 1, "phi": [[1, 1, 1], [0, 1, 2]],
                        "epsilon": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]}}
    assert cli.main(["check", "--config", write(tmp_path, raw)]) == 3


def test_compute_rho(tmp_path):
    code, out = compute(tmp_path, "beta1-m6-n2", "--output", "rho")
    assert code == 0
    assert len(out["rho"]["rho1"]) == 6
    assert out["rho"]["sum_rho1_lambda"] == pytest.approx(4.0, abs=1e-10)


def test_compute_gap_empty_interval(tmp_path):
    code, out = compute(tmp_path, "beta1-m6-n2", "--output", "gap", "--interval", "")
    assert code == 0 and out["gap"]["value"] == 1.0


def test_compute_janossy_zero_rows(tmp_path):
    code, out = compute(tmp_path, "beta1-m6-n2", "--output", "janossy")
    assert code == 0
    tables = out["janossy"]["tables"]
    assert set(tables) == {"0", "1", "2", "3"}
    assert all(row["value"] == 0.0 for row in tables["3"])
    assert all(row["value"] == 0.0 for row in tables["2"] if len(set(row["points"])) < 2)


def test_compute_janossy_full_interval_uses_minor_route(tmp_path):
    code, out = compute(tmp_path, "beta1-m6-n2-full-interval", "--output", "janossy")
    assert code == 0
    assert out["janossy"]["route"] == "pfaffian-minor"
    assert out["janossy"]["const"] == pytest.approx(0.0, abs=1e-8)


def test_compute_kernel_and_partition(tmp_path):
    code, out = compute(tmp_path, "beta4-m5-n2", "--output", "kernel")
    assert code == 0
    assert out["kernel"]["points"] == [0, 1, 8, 9]
    assert len(out["kernel"]["entries"]) == 16
    code, out = compute(tmp_path, "custom-m5-n1", "--output", "partition")
    assert code == 0 and len(out["partition"]["M"]) == 2


def test_compute_bad_interval_exits_two(tmp_path):
    code, _ = compute(tmp_path, "beta1-m6-n2", "--interval", "0,17")
    assert code == 2


def test_dumps_uses_17_digits():
    assert cli.dumps(0.1) == "0.10000000000000001"
    assert cli.dumps(1.0) == "1.0"
    assert cli.dumps(1e-20) == "9.9999999999999995e-21"
    assert json.loads(cli.dumps({"z": 1 + 2j})) == {"z": {"re": 1.0, "im": 2.0}}


def test_check_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "pfjanossy.cli", "check", "--config", "beta2-m5-n2", "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"\"seed\": 7" in a


def test_compute_is_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for out in (a, b):
        assert cli.main(["compute", "--config", "biorthogonal-m4-n2", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()
