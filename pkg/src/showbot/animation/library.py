"""Animation library: clip directory plus trigger bindings."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..motion.clips import MotionClip, load_clip

BINDINGS_SCHEMA = "showbot-bindings/1"


class UnknownClipError(KeyError):
    def __init__(self, name: str, available):
        super().__init__(f"unknown clip {name!r}; available: {sorted(available)}")
        self.name = name


@dataclass
class TriggerBindings:
    """Button semantics to clip names (buttons arrive as discrete messages)."""

    triggers: dict[str, str] = field(default_factory=dict)
    episodic: dict[str, list[str]] = field(default_factory=dict)
    audio: dict[str, str] = field(default_factory=dict)


class AnimationLibrary:
    def __init__(self, clips: dict[str, MotionClip],
                 bindings: TriggerBindings | None = None,
                 background: str = "background"):
        self.clips = clips
        self.bindings = bindings or TriggerBindings()
        if background not in clips:
            raise ValueError(f"missing background clip {background!r}")
        if clips[background].category != "background":
            raise ValueError(f"clip {background!r} is not a background clip")
        if clips[background].show_track is None:
            raise ValueError("background clip needs a show track")
        self.background = clips[background]

    def get(self, name: str) -> MotionClip:
        if name not in self.clips:
            raise UnknownClipError(name, self.clips.keys())
        return self.clips[name]

    def triggered(self, name: str) -> MotionClip:
        clip = self.get(name)
        if clip.category != "triggered":
            raise ValueError(f"clip {name!r} is not a triggered animation")
        return clip

    @classmethod
    def load(cls, directory: str | Path) -> "AnimationLibrary":
        directory = Path(directory)
        clips = {}
        for f in sorted(directory.glob("*.clip")):
            clip = load_clip(f)
            clips[clip.name] = clip
        bindings = TriggerBindings()
        bindings_file = directory / "bindings.yaml"
        if bindings_file.exists():
            with open(bindings_file) as fh:
                spec = yaml.safe_load(fh)
            if spec.get("schema") != BINDINGS_SCHEMA:
                raise ValueError(f"unsupported bindings schema: {spec.get('schema')!r}")
            bindings = TriggerBindings(
                triggers=dict(spec.get("triggers") or {}),
                episodic={k: list(v) for k, v in (spec.get("episodic") or {}).items()},
                audio=dict(spec.get("audio") or {}),
            )
        return cls(clips, bindings)


def default_library() -> AnimationLibrary:
    from ..config import data_path
    return AnimationLibrary.load(data_path("animations"))
