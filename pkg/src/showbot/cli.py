"""Command line interface; a thin client over the service API.

Exit codes: 0 ok, 1 validation failure, 2 runtime fault.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import yaml

from .sim.scenario import ScenarioError, load_scenario


def _client(url):
    from .service.client import ServiceClient
    return ServiceClient(url=url, live=False)


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
def main():
    """Desk-scale runtime and simulator for a bipedal show robot."""


@main.command()
@click.argument("scenario_file", type=click.Path(exists=True))
@click.option("--out", "out_dir", type=click.Path(), default="traces",
              help="Trace output directory.")
@click.option("--seed", type=int, default=None, help="Override scenario seed.")
@click.option("--duration", type=float, default=None,
              help="Override scenario duration [s].")
@click.option("--realtime/--fast", default=None,
              help="Pace to wall clock or run as fast as possible.")
@click.option("--url", default=None, help="Remote service URL (default in-process).")
def run(scenario_file, out_dir, seed, duration, realtime, url):
    """Run a scenario and report the episode summary."""
    try:
        scenario = load_scenario(scenario_file)
    except (ScenarioError, OSError) as e:
        _fail(str(e), 1)
    payload = {
        "name": scenario.name,
        "seed": seed if seed is not None else scenario.seed,
        "duration": duration if duration is not None else scenario.duration,
        "initial_mode": scenario.initial_mode,
        "realtime": realtime if realtime is not None else scenario.realtime,
        "rewards": scenario.rewards,
        "randomize_actuators": scenario.randomize_actuators,
        "measurement_noise": scenario.measurement_noise,
        "disturbances": scenario.disturbances,
        "script": [{"t": e.t, "do": e.kind, "args": e.args} for e in scenario.script],
    }
    with _client(url) as client:
        response = client.post("/episodes/run",
                               {"scenario": payload, "out_dir": out_dir})
    if response.status_code == 422:
        _fail(response.json().get("detail", "validation failure"), 1)
    if response.status_code != 200:
        _fail(f"service returned {response.status_code}: {response.text}", 2)
    result = response.json()
    click.echo(json.dumps(result, indent=2))
    if result["terminated"]:
        click.echo("episode terminated early", err=True)
        sys.exit(2)


@main.command()
@click.argument("profile_file", type=click.Path(exists=True))
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="CSV output path.")
@click.option("--url", default=None)
def bench(profile_file, out_path, url):
    """Replay an actuator test-bench profile."""
    try:
        with open(profile_file) as f:
            spec = yaml.safe_load(f)
        if spec.get("schema") != "showbot-bench/1":
            raise ValueError(f"unsupported bench schema: {spec.get('schema')!r}")
    except (OSError, ValueError) as e:
        _fail(str(e), 1)
    payload = {k: v for k, v in spec.items() if k != "schema"}
    if out_path:
        payload["out_path"] = out_path
    with _client(url) as client:
        response = client.post("/bench/run", payload)
    if response.status_code == 422:
        _fail(response.json().get("detail", "validation failure"), 1)
    if response.status_code != 200:
        _fail(f"service returned {response.status_code}", 2)
    click.echo(json.dumps(response.json(), indent=2))


@main.command()
@click.argument("trace_file", type=click.Path(exists=True))
@click.option("--url", default=None)
def score(trace_file, url):
    """Re-evaluate rewards over a recorded decision trace."""
    with _client(url) as client:
        response = client.post("/score", {"trace_path": str(Path(trace_file))})
    if response.status_code == 422:
        _fail(response.json().get("detail", "validation failure"), 1)
    if response.status_code != 200:
        _fail(f"service returned {response.status_code}", 2)
    click.echo(json.dumps(response.json(), indent=2))


@main.command()
@click.argument("paths", nargs=-1, required=True, type=click.Path(exists=True))
@click.option("--url", default=None)
def validate(paths, url):
    """Validate clip, gait, and scenario files."""
    with _client(url) as client:
        response = client.post("/validate", {"paths": [str(p) for p in paths]})
    if response.status_code != 200:
        _fail(f"service returned {response.status_code}", 2)
    report = response.json()
    click.echo(json.dumps(report, indent=2))
    if not report["ok"]:
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8080)
@click.option("--seed", type=int, default=0, help="Live session seed.")
@click.option("--realtime/--fast", default=True,
              help="Pace the live loop to wall clock.")
@click.option("--console", "console_dir", type=click.Path(), default=None,
              help="Serve the puppeteer console from this directory.")
def serve(host, port, seed, realtime, console_dir):
    """Start the live telemetry/command service."""
    import uvicorn

    from .service.app import create_app

    if console_dir is None and Path("frontend/index.html").exists():
        console_dir = "frontend"
    app = create_app(live=True, live_seed=seed, realtime=realtime,
                     console_dir=console_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except OSError as e:
        _fail(str(e), 2)


if __name__ == "__main__":
    main()
