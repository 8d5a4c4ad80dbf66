"""Phase feature vectors and input normalization for the policy."""

from __future__ import annotations

import numpy as np

N_RBF = 50
RBF_WIDTH = 1.0 / N_RBF
RBF_CENTERS = np.linspace(0.0, 1.0, N_RBF)

PERIODIC_FEATURE_DIM = 4
EPISODIC_FEATURE_DIM = N_RBF


def periodic_features(phi: float) -> np.ndarray:
    """First two harmonics of the gait cycle (the second carries the head bob)."""
    two_pi = 2.0 * np.pi * phi
    return np.array([np.sin(two_pi), np.cos(two_pi),
                     np.sin(2.0 * two_pi), np.cos(2.0 * two_pi)])


def episodic_features(phi: float, width: float = RBF_WIDTH) -> np.ndarray:
    """Gaussian basis over the phase, local in time; each value in (0, 1]."""
    phi = min(max(phi, 0.0), 1.0)
    d = phi - RBF_CENTERS
    return np.exp(-(d * d) / (2.0 * width * width))


def phase_features(phi: float, mode: str) -> np.ndarray:
    if mode == "periodic":
        return periodic_features(phi % 1.0)
    if mode == "episodic":
        return episodic_features(phi)
    raise ValueError(f"unknown phase mode {mode!r}")


def normalize_inputs(values: np.ndarray, ranges: np.ndarray) -> np.ndarray:
    """Scale each channel by its expected range."""
    values = np.asarray(values, dtype=float)
    ranges = np.asarray(ranges, dtype=float)
    if values.shape != ranges.shape:
        raise ValueError(f"shape mismatch: {values.shape} vs {ranges.shape}")
    if np.any(ranges <= 0.0):
        raise ValueError("normalization ranges must be positive")
    return values / ranges
