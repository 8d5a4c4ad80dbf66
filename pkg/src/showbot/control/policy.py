"""Policy networks and the reference-tracking stub.

The MLP mirrors the deployed architecture (three hidden layers of 512, ELU,
linear head) so externally trained weight files can be dropped in. The stub
policy inverts the action transform so setpoints track a kinematic
reference; it stands in wherever no trained network is available.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

POLICY_SCHEMA = "showbot-policy/1"
HIDDEN_WIDTH = 512
N_HIDDEN = 3


def elu(x: np.ndarray) -> np.ndarray:
    return np.where(x > 0.0, x, np.expm1(x))


@dataclass
class PolicyNet:
    """Affine + ELU chain with a linear output head."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]
    input_ranges: np.ndarray | None = None
    meta: dict | None = None

    def __post_init__(self):
        if len(self.weights) != len(self.biases):
            raise ValueError("weight/bias count mismatch")
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.ndim != 2 or b.shape != (w.shape[1],):
                raise ValueError(f"layer {i}: inconsistent shapes {w.shape} {b.shape}")
            if i > 0 and w.shape[0] != self.weights[i - 1].shape[1]:
                raise ValueError(f"layer {i}: input dim does not chain")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise ValueError(f"layer {i}: non-finite parameters")

    @property
    def input_dim(self) -> int:
        return self.weights[0].shape[0]

    @property
    def output_dim(self) -> int:
        return self.weights[-1].shape[1]

    def forward(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.input_dim,):
            raise ValueError(f"input dim {x.shape} does not match net {self.input_dim}")
        for w, b in zip(self.weights[:-1], self.biases[:-1]):
            x = elu(x @ w + b)
        out = x @ self.weights[-1] + self.biases[-1]
        if not np.all(np.isfinite(out)):
            raise ValueError("policy produced non-finite output")
        return out

    @classmethod
    def initialized(cls, input_dim: int, output_dim: int,
                    rng: np.random.Generator | None = None) -> "PolicyNet":
        rng = rng or np.random.default_rng(0)
        dims = [input_dim] + [HIDDEN_WIDTH] * N_HIDDEN + [output_dim]
        weights, biases = [], []
        for a, b in zip(dims[:-1], dims[1:]):
            weights.append(rng.normal(scale=1.0 / np.sqrt(a), size=(a, b)))
            biases.append(np.zeros(b))
        return cls(weights=weights, biases=biases)

    def save(self, path: str | Path):
        meta = dict(self.meta or {})
        meta.update({
            "schema": POLICY_SCHEMA,
            "layers": len(self.weights),
            "input_dim": self.input_dim,
            "output_dim": self.output_dim,
            "activation": "elu",
        })
        arrays = {"meta": np.frombuffer(json.dumps(meta).encode(), dtype=np.uint8)}
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            arrays[f"w{i}"] = w
            arrays[f"b{i}"] = b
        if self.input_ranges is not None:
            arrays["input_ranges"] = self.input_ranges
        np.savez(path, **arrays)

    @classmethod
    def load(cls, path: str | Path) -> "PolicyNet":
        with np.load(path) as data:
            meta = json.loads(bytes(data["meta"]).decode())
            if meta.get("schema") != POLICY_SCHEMA:
                raise ValueError(f"unsupported policy schema: {meta.get('schema')!r}")
            n = int(meta["layers"])
            weights = [data[f"w{i}"] for i in range(n)]
            biases = [data[f"b{i}"] for i in range(n)]
            ranges = data["input_ranges"] if "input_ranges" in data else None
        return cls(weights=weights, biases=biases, input_ranges=ranges, meta=meta)


class StubPolicy:
    """Inverse of the action transform: setpoints track the reference joints."""

    def __init__(self, nominal_q: np.ndarray, action_scale: np.ndarray):
        self.nominal_q = np.asarray(nominal_q, dtype=float)
        self.action_scale = np.asarray(action_scale, dtype=float)
        if np.any(self.action_scale <= 0.0):
            raise ValueError("action scale must be positive")

    def __call__(self, reference_q: np.ndarray) -> np.ndarray:
        return (np.asarray(reference_q, dtype=float) - self.nominal_q) / self.action_scale
