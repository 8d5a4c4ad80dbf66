"""Normalized phase signal driving periodic and episodic references."""

from __future__ import annotations

from dataclasses import dataclass

PERIODIC = "periodic"
EPISODIC = "episodic"


@dataclass
class PhaseSignal:
    phi: float = 0.0
    rate: float = 0.0          # 1/s
    mode: str = PERIODIC
    completed: bool = False

    def __post_init__(self):
        if self.mode not in (PERIODIC, EPISODIC):
            raise ValueError(f"unknown phase mode {self.mode!r}")

    def copy(self) -> "PhaseSignal":
        return PhaseSignal(self.phi, self.rate, self.mode, self.completed)


def advance(phase: PhaseSignal, dt: float) -> PhaseSignal:
    """Step the phase: periodic wraps modulo 1, episodic clamps at 1."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    phi = phase.phi + phase.rate * dt
    if phase.mode == PERIODIC:
        return PhaseSignal(phi % 1.0, phase.rate, PERIODIC, False)
    if phi >= 1.0:
        return PhaseSignal(1.0, phase.rate, EPISODIC, True)
    return PhaseSignal(phi, phase.rate, EPISODIC, False)
