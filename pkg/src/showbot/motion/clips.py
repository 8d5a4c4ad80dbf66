"""Motion clip container and its text file format.

A clip stores uniformly sampled kinematic target frames in path coordinates,
optionally alongside a show-function track and the clip's own path-frame
trajectory relative to its start. Files are plain text: a header block, a
``---`` separator, then one whitespace-separated row of floats per frame.
The loader reports malformed content with file and line numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..geometry import quat_normalize, quat_slerp
from ..model.state import KinematicTargetState

CLIP_SCHEMA = "showbot-clip/1"

CATEGORIES = ("background", "triggered", "episodic", "gait-sample")
PERIODIC_CATEGORIES = ("background", "gait-sample")

SHOW_DIM = 11  # antennas (2), eye colors (2x3), eye radii (2), head lamp (1)
_BASE_COLS = 43  # pose (7) + velocities (6) + joints (28) + contacts (2)


class ClipError(ValueError):
    def __init__(self, path, line: int | None, message: str):
        location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(location + message)


@dataclass
class MotionClip:
    name: str
    category: str
    duration: float
    positions: np.ndarray      # (n, 3) path coordinates
    quats: np.ndarray          # (n, 4)
    lin_vels: np.ndarray       # (n, 3)
    ang_vels: np.ndarray       # (n, 3)
    joint_pos: np.ndarray      # (n, 14)
    joint_vel: np.ndarray      # (n, 14)
    contacts: np.ndarray       # (n, 2) bool
    path_track: np.ndarray | None = None   # (n, 3): x, y, heading rel. start
    show_track: np.ndarray | None = None   # (n, SHOW_DIM)
    command: np.ndarray | None = None      # (3,) gait sample point (vx, vy, wz)
    cycle_duration: float | None = None    # gait cycle length [s]
    audio: str | None = None               # cue id relayed on trigger

    def __post_init__(self):
        self.validate()

    @property
    def n_frames(self) -> int:
        return self.positions.shape[0]

    @property
    def periodic(self) -> bool:
        return self.category in PERIODIC_CATEGORIES

    def validate(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"clip {self.name!r}: unknown category {self.category!r}")
        n = self.positions.shape[0]
        if n < 2:
            raise ValueError(f"clip {self.name!r}: needs at least 2 frames")
        if self.duration <= 0.0:
            raise ValueError(f"clip {self.name!r}: duration must be positive")
        shapes = {
            "positions": (n, 3), "quats": (n, 4), "lin_vels": (n, 3),
            "ang_vels": (n, 3), "joint_pos": (n, 14), "joint_vel": (n, 14),
            "contacts": (n, 2),
        }
        for attr, shape in shapes.items():
            if getattr(self, attr).shape != shape:
                raise ValueError(f"clip {self.name!r}: {attr} must have shape {shape}")
        norms = np.linalg.norm(self.quats, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-6):
            raise ValueError(f"clip {self.name!r}: orientation rows must be unit quaternions")
        self.quats = self.quats / norms[:, None]
        if self.category == "gait-sample":
            if self.command is None or self.cycle_duration is None:
                raise ValueError(f"clip {self.name!r}: gait samples need command and "
                                 "cycle_duration tags")

    def _bracket(self, phi: float) -> tuple[int, int, float]:
        if self.periodic:
            u = (phi % 1.0) * self.n_frames
            i0 = int(np.floor(u)) % self.n_frames
            return i0, (i0 + 1) % self.n_frames, u - np.floor(u)
        phi = min(max(phi, 0.0), 1.0)
        u = phi * (self.n_frames - 1)
        i0 = min(int(np.floor(u)), self.n_frames - 2)
        return i0, i0 + 1, u - i0

    def sample_state(self, phi: float) -> KinematicTargetState:
        """Interpolated target state at normalized phase (path coordinates)."""
        i0, i1, t = self._bracket(phi)
        lerp = lambda a: (1.0 - t) * a[i0] + t * a[i1]
        contact = lerp(self.contacts.astype(float)) >= 0.5
        return KinematicTargetState(
            position=lerp(self.positions),
            orientation=quat_slerp(self.quats[i0], self.quats[i1], t),
            lin_vel=lerp(self.lin_vels),
            ang_vel=lerp(self.ang_vels),
            joint_pos=lerp(self.joint_pos),
            joint_vel=lerp(self.joint_vel),
            contact_left=bool(contact[0]),
            contact_right=bool(contact[1]),
        )

    def sample_show(self, phi: float) -> np.ndarray | None:
        if self.show_track is None:
            return None
        i0, i1, t = self._bracket(phi)
        return (1.0 - t) * self.show_track[i0] + t * self.show_track[i1]

    def sample_path(self, phi: float) -> np.ndarray | None:
        if self.path_track is None:
            return None
        i0, i1, t = self._bracket(phi)
        a, b = self.path_track[i0], self.path_track[i1]
        heading_delta = np.arctan2(np.sin(b[2] - a[2]), np.cos(b[2] - a[2]))
        out = (1.0 - t) * a + t * b
        out[2] = a[2] + t * heading_delta
        return out


def save_clip(clip: MotionClip, path: str | Path):
    path = Path(path)
    lines = [CLIP_SCHEMA,
             f"name: {clip.name}",
             f"category: {clip.category}",
             f"duration: {float(clip.duration)!r}",
             f"frames: {clip.n_frames}",
             f"path_track: {'true' if clip.path_track is not None else 'false'}",
             f"show_track: {'true' if clip.show_track is not None else 'false'}"]
    if clip.command is not None:
        lines.append("command: " + " ".join(repr(float(v)) for v in clip.command))
    if clip.cycle_duration is not None:
        lines.append(f"cycle_duration: {float(clip.cycle_duration)!r}")
    if clip.audio is not None:
        lines.append(f"audio: {clip.audio}")
    lines.append("---")
    for i in range(clip.n_frames):
        row = np.concatenate([
            clip.positions[i], clip.quats[i], clip.lin_vels[i], clip.ang_vels[i],
            clip.joint_pos[i], clip.joint_vel[i], clip.contacts[i].astype(float),
            clip.path_track[i] if clip.path_track is not None else [],
            clip.show_track[i] if clip.show_track is not None else [],
        ])
        lines.append(" ".join(repr(float(v)) for v in row))
    path.write_text("\n".join(lines) + "\n")


def load_clip(path: str | Path) -> MotionClip:
    path = Path(path)
    text = path.read_text().splitlines()
    if not text or text[0].strip() != CLIP_SCHEMA:
        raise ClipError(path, 1, f"expected schema line {CLIP_SCHEMA!r}")

    header: dict[str, str] = {}
    body_start = None
    for ln, raw in enumerate(text[1:], start=2):
        line = raw.strip()
        if line == "---":
            body_start = ln
            break
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ClipError(path, ln, f"malformed header line {line!r}")
        key, value = line.split(":", 1)
        header[key.strip()] = value.strip()
    if body_start is None:
        raise ClipError(path, len(text), "missing '---' separator")

    def need(key):
        if key not in header:
            raise ClipError(path, body_start, f"missing header field {key!r}")
        return header[key]

    name = need("name")
    category = need("category")
    if category not in CATEGORIES:
        raise ClipError(path, body_start, f"unknown category {category!r}")
    try:
        duration = float(need("duration"))
        n_frames = int(need("frames"))
    except ValueError as e:
        raise ClipError(path, body_start, str(e)) from None
    has_path = header.get("path_track", "false") == "true"
    has_show = header.get("show_track", "false") == "true"
    n_cols = _BASE_COLS + (3 if has_path else 0) + (SHOW_DIM if has_show else 0)

    rows = []
    for ln, raw in enumerate(text[body_start:], start=body_start + 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != n_cols:
            raise ClipError(path, ln, f"expected {n_cols} values, got {len(parts)}")
        try:
            rows.append([float(v) for v in parts])
        except ValueError:
            raise ClipError(path, ln, "non-numeric value in frame row") from None
    if len(rows) != n_frames:
        raise ClipError(path, len(text), f"header says {n_frames} frames, found {len(rows)}")
    if len(rows) < 2:
        raise ClipError(path, len(text), "clip needs at least 2 frames")

    data = np.asarray(rows, dtype=float)
    col = 0

    def take(width):
        nonlocal col
        block = data[:, col:col + width]
        col += width
        return block

    positions = take(3)
    quats = take(4)
    norms = np.linalg.norm(quats, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-6):
        bad = int(np.argmax(np.abs(norms - 1.0))) + body_start + 1
        raise ClipError(path, bad, "orientation is not a unit quaternion")
    lin_vels, ang_vels = take(3), take(3)
    joint_pos, joint_vel = take(14), take(14)
    contacts_raw = take(2)
    if not np.all(np.isin(contacts_raw, (0.0, 1.0))):
        bad = int(np.argmax(~np.all(np.isin(contacts_raw, (0.0, 1.0)), axis=1)))
        raise ClipError(path, bad + body_start + 1, "contact flags must be 0 or 1")
    path_track = take(3) if has_path else None
    show_track = take(SHOW_DIM) if has_show else None
    if show_track is not None:
        fractions = show_track[:, 2:]
        if fractions.min() < -1e-9 or fractions.max() > 1.0 + 1e-9:
            bad = int(np.argmax(np.any((fractions < -1e-9) | (fractions > 1 + 1e-9), axis=1)))
            raise ClipError(path, bad + body_start + 1,
                            "show-function fractions must stay within [0, 1]")

    command = None
    if "command" in header:
        try:
            command = np.array([float(v) for v in header["command"].split()])
        except ValueError:
            raise ClipError(path, body_start, "malformed command tag") from None
        if command.shape != (3,):
            raise ClipError(path, body_start, "command tag needs 3 values")
    cycle_duration = float(header["cycle_duration"]) if "cycle_duration" in header else None

    try:
        return MotionClip(
            name=name, category=category, duration=duration,
            positions=positions, quats=quats, lin_vels=lin_vels, ang_vels=ang_vels,
            joint_pos=joint_pos, joint_vel=joint_vel,
            contacts=contacts_raw.astype(bool),
            path_track=path_track, show_track=show_track,
            command=command, cycle_duration=cycle_duration,
            audio=header.get("audio"),
        )
    except ValueError as e:
        raise ClipError(path, None, str(e)) from None
