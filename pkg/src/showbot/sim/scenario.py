"""Episode scenarios: seed, duration, and a timed event script."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

SCENARIO_SCHEMA = "showbot-scenario/1"

EVENT_KINDS = ("transition", "joystick", "trigger", "episodic", "motion_stop",
               "reset_pose", "command", "lamp", "tuck", "background")


class ScenarioError(ValueError):
    pass


@dataclass
class ScriptEvent:
    t: float
    kind: str
    args: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ScenarioError(f"unknown script event {self.kind!r}; "
                                f"valid: {EVENT_KINDS}")


@dataclass
class EpisodeScenario:
    seed: int = 0
    duration: float = 5.0
    initial_mode: str = "standing"
    realtime: bool = False
    rewards: bool = True
    randomize_actuators: bool = True
    measurement_noise: bool = True
    disturbances: bool = False
    script: list[ScriptEvent] = field(default_factory=list)
    name: str = "episode"

    def __post_init__(self):
        if self.duration <= 0.0:
            raise ScenarioError("duration must be positive")
        for event in self.script:
            if not 0.0 <= event.t <= self.duration:
                raise ScenarioError(
                    f"script event at t={event.t} outside [0, {self.duration}]")
        self.script = sorted(self.script, key=lambda e: e.t)

    def referenced_clips(self) -> tuple[set[str], set[str]]:
        """(triggered animation names, episodic motion names) used by the script."""
        triggers, motions = set(), set()
        for event in self.script:
            if event.kind == "trigger":
                triggers.add(event.args["name"])
            elif event.kind == "episodic":
                motions.add(event.args["name"])
        return triggers, motions


def load_scenario(path: str | Path) -> EpisodeScenario:
    path = Path(path)
    with open(path) as f:
        spec = yaml.safe_load(f)
    if spec.get("schema") != SCENARIO_SCHEMA:
        raise ScenarioError(f"{path}: unsupported scenario schema "
                            f"{spec.get('schema')!r}")
    script = []
    for i, row in enumerate(spec.get("script") or []):
        row = dict(row)
        try:
            t = float(row.pop("t"))
            kind = row.pop("do")
        except KeyError as e:
            raise ScenarioError(f"{path}: script row {i}: missing {e}") from None
        # YAML 1.1 reads bare yes/no as booleans; those are also clip names.
        if isinstance(row.get("name"), bool):
            row["name"] = "yes" if row["name"] else "no"
        script.append(ScriptEvent(t=t, kind=kind, args=row))
    randomize = spec.get("randomize") or {}
    return EpisodeScenario(
        seed=int(spec.get("seed", 0)),
        duration=float(spec.get("duration", 5.0)),
        initial_mode=spec.get("initial_mode", "standing"),
        realtime=bool(spec.get("realtime", False)),
        rewards=bool(spec.get("rewards", True)),
        randomize_actuators=bool(randomize.get("actuators", True)),
        measurement_noise=bool(randomize.get("noise", True)),
        disturbances=bool(randomize.get("disturbances", False)),
        script=script,
        name=spec.get("name", path.stem),
    )
