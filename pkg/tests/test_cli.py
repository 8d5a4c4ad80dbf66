"""CLI verbs through the in-process thin client."""

import json

import pytest
from click.testing import CliRunner

from showbot.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def write_scenario(path, extra=""):
    path.write_text("schema: showbot-scenario/1\nname: cli\nseed: 3\n"
                    "duration: 0.6\nrewards: false\n" + extra)


def test_run_command(runner, tmp_path):
    scenario = tmp_path / "s.yaml"
    write_scenario(scenario)
    result = runner.invoke(main, ["run", str(scenario), "--out",
                                  str(tmp_path / "traces")])
    assert result.exit_code == 0, result.output
    body = json.loads(result.output)
    assert body["ticks"] == 30
    assert (tmp_path / "traces" / "cli_50hz.csv").exists()


def test_run_command_seed_override(runner, tmp_path):
    scenario = tmp_path / "s.yaml"
    write_scenario(scenario)
    result = runner.invoke(main, ["run", str(scenario), "--seed", "99",
                                  "--duration", "0.2",
                                  "--out", str(tmp_path / "t2")])
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)["ticks"] == 10


def test_run_command_bad_scenario_exit_1(runner, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("schema: nope/1\n")
    result = runner.invoke(main, ["run", str(bad)])
    assert result.exit_code == 1


def test_bench_command(runner, tmp_path):
    profile = tmp_path / "bench.yaml"
    profile.write_text(
        "schema: showbot-bench/1\nactuator: A1\nmode: locked\nduration: 0.2\n"
        "setpoint: {type: constant, value: 100.0}\n"
        "velocity: {type: constant, value: 0.0}\n")
    out_csv = tmp_path / "bench.csv"
    result = runner.invoke(main, ["bench", str(profile), "--out", str(out_csv)])
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)["stall_torque"] == pytest.approx(34.0)
    assert out_csv.exists()
    header = out_csv.read_text().splitlines()[0]
    assert header.split(",") == ["t", "a", "q", "qd", "tau_m", "tau",
                                 "tau_lo", "tau_hi", "q_hat"]


def test_score_command(runner, tmp_path):
    scenario = tmp_path / "s.yaml"
    write_scenario(scenario, "rewards: true\n")
    result = runner.invoke(main, ["run", str(scenario), "--out",
                                  str(tmp_path / "tr")])
    assert result.exit_code == 0, result.output
    trace = json.loads(result.output)["decision_trace"]
    result = runner.invoke(main, ["score", trace])
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)["term_means"]["contact"] == 2.0


def test_validate_command_exit_codes(runner, tmp_path):
    good = tmp_path / "ok.yaml"
    good.write_text("schema: showbot-scenario/1\nduration: 1.0\n")
    result = runner.invoke(main, ["validate", str(good)])
    assert result.exit_code == 0, result.output

    bad = tmp_path / "bad.clip"
    bad.write_text("garbage\n")
    result = runner.invoke(main, ["validate", str(bad)])
    assert result.exit_code == 1
    report = json.loads(result.output)
    assert not report["ok"]
