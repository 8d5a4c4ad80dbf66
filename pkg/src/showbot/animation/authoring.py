"""Procedural authoring of the default animation and motion libraries.

Stand-in for hand-animated content: every clip is built from smooth command
envelopes (torso pose, head offsets, show functions) realized through the
same analytic IK the runtime uses, so clips are kinematically consistent
with the model. Run as a module to regenerate the packaged clip files:

    python3 -m showbot.animation.authoring <output-dir>
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..geometry import quat_from_euler_zyx, quat_mul, quat_normalize, quat_rotvec
from ..model import RobotModel, default_model, forward_kinematics, nominal_pose
from ..model import solve_leg, solve_neck
from ..motion.clips import MotionClip, save_clip

FPS = 25


def _env(t: float, duration: float, ramp: float = 0.3) -> float:
    """Smooth 0-1-0 envelope with sine-squared ramps at both ends."""
    if t <= 0.0 or t >= duration:
        return 0.0
    if t < ramp:
        return float(np.sin(0.5 * np.pi * t / ramp) ** 2)
    if t > duration - ramp:
        return float(np.sin(0.5 * np.pi * (duration - t) / ramp) ** 2)
    return 1.0


def _bump(t: float, center: float, width: float) -> float:
    return float(np.exp(-0.5 * ((t - center) / width) ** 2))


class _Author:
    """Builds clips from per-time command and show envelopes."""

    def __init__(self, model: RobotModel):
        self.model = model
        nominal = nominal_pose(model)
        poses = forward_kinematics(model, nominal)
        self.h_nom = model.torso_height_nominal
        self.head_rel = poses["torso"].inverse().compose(poses["head"])
        self.site_rel = poses["torso"].inverse().compose(poses["head_site"]).pos
        self.hip_y = model.hip_spacing / 2.0
        self.ankle_h = -model.sole_offset[2]
        self._neck_seed = 0.0  # carried across frames for branch continuity

    def config_at(self, pose_cmd: dict) -> np.ndarray:
        """Joint vector for a torso pose plus head offsets (feet planted)."""
        from ..geometry import Transform
        torso_quat = quat_from_euler_zyx(*pose_cmd.get("torso_euler", np.zeros(3)))
        h = pose_cmd.get("h_torso", self.h_nom)
        torso = Transform(pos=np.array([0.0, 0.0, h]), quat=torso_quat)
        q = np.zeros(self.model.n_joints)
        for side, sl in (("L", slice(0, 5)), ("R", slice(5, 10))):
            lateral = self.hip_y if side == "L" else -self.hip_y
            ankle = np.array([0.0, lateral, self.ankle_h])
            res = solve_leg(self.model, side, torso, ankle, foot_yaw=0.0)
            q[self.model.leg_indices[sl]] = res.q
        base_h = torso.apply(self.site_rel)[2]
        target_quat = quat_mul(
            quat_mul(torso.quat, self.head_rel.quat),
            quat_from_euler_zyx(*pose_cmd.get("head_euler", np.zeros(3))))
        res = solve_neck(self.model, torso, base_h + pose_cmd.get("dh_head", 0.0),
                         target_quat, seed_nf=self._neck_seed)
        self._neck_seed = float(res.q[3])
        q[self.model.neck_indices] = res.q
        return q, np.array([0.0, 0.0, h]), torso_quat

    def build(self, name: str, category: str, duration: float, pose_fn,
              show_fn=None, contacts_fn=None, audio: str | None = None,
              with_path: bool = False) -> MotionClip:
        n = max(int(round(duration * FPS)), 2)
        if category in ("background", "gait-sample"):
            times = np.arange(n) * duration / n
        else:
            times = np.linspace(0.0, duration, n)
        dt = 1.0 / FPS
        self._neck_seed = 0.0

        qs, positions, quats = [], [], []
        for t in times:
            q, pos, quat = self.config_at(pose_fn(float(t)))
            qs.append(q)
            positions.append(pos)
            quats.append(quat)
        qs = np.array(qs)
        positions = np.array(positions)
        quats = np.array(quats)

        def wrap_idx(i):
            if category in ("background", "gait-sample"):
                return i % n
            return min(max(i, 0), n - 1)

        lin_vels = np.zeros((n, 3))
        ang_vels = np.zeros((n, 3))
        joint_vel = np.zeros((n, 14))
        for i in range(n):
            a, b = wrap_idx(i - 1), wrap_idx(i + 1)
            span = dt * (2 if a != b else 1)
            lin_vels[i] = (positions[b] - positions[a]) / span
            dq = quat_mul(quats[b], np.array([1, -1, -1, -1]) * quats[a])
            ang_vels[i] = quat_rotvec(quat_normalize(dq)) / span
            joint_vel[i] = (qs[b] - qs[a]) / span

        contacts = np.ones((n, 2), dtype=bool)
        if contacts_fn is not None:
            contacts = np.array([contacts_fn(float(t)) for t in times], dtype=bool)
        show_track = None
        if show_fn is not None:
            show_track = np.array([show_fn(float(t)) for t in times])
        path_track = np.zeros((n, 3)) if with_path else None

        return MotionClip(
            name=name, category=category, duration=duration,
            positions=positions, quats=quats, lin_vels=lin_vels, ang_vels=ang_vels,
            joint_pos=qs, joint_vel=joint_vel, contacts=contacts,
            show_track=show_track, path_track=path_track, audio=audio,
        )


def _show(antennas=(0.0, 0.0), color=(0.25, 0.65, 1.0), radii=(0.8, 0.8), lamp=0.0):
    return np.concatenate([antennas, color, color, radii, [lamp]])


def author_default_library(model: RobotModel | None = None) -> dict[str, MotionClip]:
    model = model or default_model()
    a = _Author(model)
    h = model.torso_height_nominal
    clips = {}

    def background_pose(t):
        return {
            "h_torso": h + 0.003 * np.sin(2 * np.pi * t / 4.0),
            "dh_head": 0.004 * np.sin(2 * np.pi * t / 4.0 + 0.4),
            "head_euler": np.array([0.03 * np.sin(2 * np.pi * t / 8.0), 0.0, 0.0]),
        }

    def background_show(t):
        blink = max(_bump(t, 2.1, 0.05), _bump(t, 5.3, 0.05), _bump(t, 5.55, 0.05))
        radius = 0.8 * (1.0 - 0.9 * blink)
        sway = 0.08 * np.sin(2 * np.pi * t / 5.0)
        return _show(antennas=(sway, -sway), radii=(radius, radius))

    clips["background"] = a.build("background", "background", 8.0,
                                  background_pose, background_show)

    def nod_pose(t):
        e = _env(t, 1.6, 0.25)
        return {"head_euler": np.array([0.0, 0.35 * e * np.sin(2 * np.pi * t / 0.8), 0.0])}

    clips["yes"] = a.build("yes", "triggered", 1.6, nod_pose,
                           lambda t: _show(radii=(0.9, 0.9)), audio="cue_yes")

    def shake_pose(t):
        e = _env(t, 1.8, 0.25)
        return {"head_euler": np.array([0.4 * e * np.sin(2 * np.pi * t / 0.9), 0.0, 0.0])}

    clips["no"] = a.build("no", "triggered", 1.8, shake_pose,
                          lambda t: _show(radii=(0.6, 0.6)), audio="cue_no")

    def happy_pose(t):
        e = _env(t, 2.0, 0.3)
        return {"dh_head": 0.025 * e * abs(np.sin(2 * np.pi * t / 0.5)),
                "head_euler": np.array([0.0, -0.1 * e, 0.0])}

    def happy_show(t):
        e = _env(t, 2.0, 0.3)
        color = (1.0 - e) * np.array([0.25, 0.65, 1.0]) + e * np.array([1.0, 0.85, 0.2])
        return _show(antennas=(0.3 * e, 0.3 * e), color=tuple(color), radii=(0.95, 0.95))

    clips["happy"] = a.build("happy", "triggered", 2.0, happy_pose, happy_show,
                             audio="cue_happy")

    def angry_pose(t):
        e = _env(t, 2.0, 0.3)
        return {"head_euler": np.array([0.0, 0.25 * e,
                                        0.15 * e * np.sin(2 * np.pi * t / 0.3)])}

    def angry_show(t):
        e = _env(t, 2.0, 0.3)
        color = (1.0 - e) * np.array([0.25, 0.65, 1.0]) + e * np.array([1.0, 0.1, 0.05])
        return _show(antennas=(-0.5 * e, -0.5 * e), color=tuple(color), radii=(0.55, 0.55))

    clips["angry"] = a.build("angry", "triggered", 2.0, angry_pose, angry_show,
                             audio="cue_angry")

    def anxious_pose(t):
        e = _env(t, 2.2, 0.3)
        return {"head_euler": np.array([0.25 * e * np.sin(2 * np.pi * t / 0.7),
                                        0.1 * e, 0.0]),
                "dh_head": -0.02 * e}

    def anxious_show(t):
        e = _env(t, 2.2, 0.3)
        twitch = 0.1 * np.sin(2 * np.pi * t / 0.25)
        color = (1.0 - e) * np.array([0.25, 0.65, 1.0]) + e * np.array([0.55, 0.7, 0.9])
        return _show(antennas=(-0.2 * e + twitch, -0.2 * e - twitch),
                     color=tuple(color), radii=(0.5 + 0.2 * e, 0.5 + 0.2 * e))

    clips["anxious"] = a.build("anxious", "triggered", 2.2, anxious_pose, anxious_show,
                               audio="cue_anxious")

    def curious_pose(t):
        e = _env(t, 2.4, 0.4)
        return {"head_euler": np.array([0.15 * e, -0.15 * e, 0.3 * e]),
                "dh_head": 0.02 * e}

    clips["curious"] = a.build("curious", "triggered", 2.4, curious_pose,
                               lambda t: _show(antennas=(0.25 * _env(t, 2.4, 0.4), 0.0),
                                               radii=(1.0, 1.0)),
                               audio="cue_curious")

    def scan_pose(t):
        e = _env(t, 3.0, 0.35)
        return {"head_euler": np.array([0.7 * e * np.sin(2 * np.pi * t / 2.0), 0.0, 0.0])}

    def scan_show(t):
        e = _env(t, 3.0, 0.35)
        lamp = e * (0.5 + 0.5 * np.sin(2 * np.pi * t / 0.4))
        return _show(color=(0.2, 1.0, 0.35), radii=(0.7, 0.7), lamp=lamp)

    clips["scan"] = a.build("scan", "triggered", 3.0, scan_pose, scan_show,
                            audio="cue_scan")

    return clips


def author_episodic_motions(model: RobotModel | None = None) -> dict[str, MotionClip]:
    model = model or default_model()
    a = _Author(model)
    h = model.torso_height_nominal
    clips = {}

    def dance_pose(t):
        e = _env(t, 4.0, 0.5)
        return {
            "h_torso": h - 0.02 * e * (0.5 - 0.5 * np.cos(2 * np.pi * t / 0.5)),
            "torso_euler": np.array([0.3 * e * np.sin(2 * np.pi * t / 1.0), 0.0,
                                     0.1 * e * np.sin(2 * np.pi * t / 0.5)]),
            "head_euler": np.array([-0.25 * e * np.sin(2 * np.pi * t / 1.0), 0.0,
                                    -0.2 * e * np.sin(2 * np.pi * t / 0.5)]),
        }

    clips["dance"] = a.build("dance", "episodic", 4.0, dance_pose,
                             with_path=True, audio="cue_dance")

    def excited_pose(t):
        e = _env(t, 3.0, 0.4)
        return {
            "torso_euler": np.array([0.12 * e * np.sin(2 * np.pi * t / 0.25),
                                     0.06 * e * np.sin(2 * np.pi * t / 0.33), 0.0]),
            "dh_head": 0.03 * e,
            "head_euler": np.array([0.0, -0.2 * e, 0.0]),
        }

    clips["excited"] = a.build("excited", "episodic", 3.0, excited_pose,
                               with_path=True, audio="cue_excited")

    def jump_pose(t):
        crouch = _bump(t, 0.55, 0.18) * 0.05
        flight = _bump(t, 0.95, 0.1) * 0.048
        land = _bump(t, 1.35, 0.15) * 0.03
        return {
            "h_torso": h - crouch + flight - land,
            "head_euler": np.array([0.0, -0.3 * _bump(t, 0.95, 0.2), 0.0]),
            "torso_euler": np.array([0.0, 0.1 * _bump(t, 0.55, 0.2), 0.0]),
        }

    def jump_contacts(t):
        airborne = 0.85 <= t <= 1.05
        return (not airborne, not airborne)

    clips["jump"] = a.build("jump", "episodic", 2.0, jump_pose,
                            contacts_fn=jump_contacts, with_path=True,
                            audio="cue_jump")

    def tantrum_pose(t):
        e = _env(t, 3.5, 0.4)
        return {
            "torso_euler": np.array([0.0, 0.12 * e * np.sin(2 * np.pi * t / 0.4), 0.0]),
            "h_torso": h - 0.02 * e,
            "head_euler": np.array([0.5 * e * np.sin(2 * np.pi * t / 0.35),
                                    0.15 * e, 0.0]),
        }

    def tantrum_contacts(t):
        e = _env(t, 3.5, 0.4)
        if e < 0.9:
            return (True, True)
        stomp = np.sin(2 * np.pi * t / 0.8)
        return (stomp < 0.7, stomp > -0.7)

    clips["tantrum"] = a.build("tantrum", "episodic", 3.5, tantrum_pose,
                               contacts_fn=tantrum_contacts, with_path=True,
                               audio="cue_tantrum")
    return clips


BINDINGS_YAML = """\
schema: showbot-bindings/1
triggers:
  L3: scan
  L4_short: happy
  L4_long: angry
  L5_short: anxious
  L5_long: curious
  R4_short: "yes"
  R4_long: "no"
episodic:
  left_trackpad: [dance, excited, jump, tantrum]
  right_trackpad: []
audio:
  R5: cue_vocal
"""


def write_libraries(root: str | Path, model: RobotModel | None = None):
    root = Path(root)
    animations = root / "animations"
    motions = root / "motions"
    animations.mkdir(parents=True, exist_ok=True)
    motions.mkdir(parents=True, exist_ok=True)
    for name, clip in author_default_library(model).items():
        save_clip(clip, animations / f"{name}.clip")
    (animations / "bindings.yaml").write_text(BINDINGS_YAML)
    for name, clip in author_episodic_motions(model).items():
        save_clip(clip, motions / f"{name}.clip")


if __name__ == "__main__":
    import sys

    out = sys.argv[1] if len(sys.argv) > 1 else str(Path(__file__).parent.parent / "data")
    write_libraries(out)
    print(f"clip libraries written under {out}")
