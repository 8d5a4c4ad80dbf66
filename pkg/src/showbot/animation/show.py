"""Show-function state: antennas, eyes, head lamp."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SHOW_DIM = 11


@dataclass
class ShowFunctionState:
    """Non-dynamic expressive outputs.

    Vector layout: antennas (2, rad), left eye RGB, right eye RGB,
    eye radii (2, fraction), lamp brightness (fraction).
    """

    antennas: np.ndarray = field(default_factory=lambda: np.zeros(2))
    eye_colors: np.ndarray = field(default_factory=lambda: np.ones((2, 3)))
    eye_radii: np.ndarray = field(default_factory=lambda: np.full(2, 0.8))
    lamp: float = 0.0

    def __post_init__(self):
        self.antennas = np.asarray(self.antennas, dtype=float).copy()
        self.eye_colors = np.asarray(self.eye_colors, dtype=float).reshape(2, 3).copy()
        self.eye_radii = np.asarray(self.eye_radii, dtype=float).copy()
        self.lamp = float(self.lamp)

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.antennas, self.eye_colors.ravel(),
                               self.eye_radii, [self.lamp]])

    @classmethod
    def from_vector(cls, vec) -> "ShowFunctionState":
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (SHOW_DIM,):
            raise ValueError(f"show vector must have length {SHOW_DIM}")
        return cls(antennas=vec[:2], eye_colors=vec[2:8].reshape(2, 3),
                   eye_radii=vec[8:10], lamp=vec[10])

    def clamped(self) -> "ShowFunctionState":
        """Fractions forced into [0, 1]; antenna angles pass through."""
        return ShowFunctionState(
            antennas=self.antennas,
            eye_colors=np.clip(self.eye_colors, 0.0, 1.0),
            eye_radii=np.clip(self.eye_radii, 0.0, 1.0),
            lamp=float(np.clip(self.lamp, 0.0, 1.0)),
        )

    def in_range(self) -> bool:
        return (np.all(self.eye_colors >= 0.0) and np.all(self.eye_colors <= 1.0)
                and np.all(self.eye_radii >= 0.0) and np.all(self.eye_radii <= 1.0)
                and 0.0 <= self.lamp <= 1.0)

    def copy(self) -> "ShowFunctionState":
        return ShowFunctionState(self.antennas, self.eye_colors, self.eye_radii,
                                 self.lamp)
