"""Configuration root resolution and data-file access.

The packaged defaults under ``showbot/data`` can be overridden by pointing
``SHOWBOT_CONFIG_ROOT`` at a directory with the same file names.
"""

from __future__ import annotations

import os
from pathlib import Path

CONFIG_ROOT_ENV = "SHOWBOT_CONFIG_ROOT"

_PACKAGE_DATA = Path(__file__).parent / "data"


def config_root() -> Path:
    override = os.environ.get(CONFIG_ROOT_ENV)
    if override:
        return Path(override)
    return _PACKAGE_DATA


def data_path(name: str) -> Path:
    """Resolve a config file, falling back to the packaged defaults."""
    root = config_root()
    candidate = root / name
    if candidate.exists():
        return candidate
    fallback = _PACKAGE_DATA / name
    if fallback.exists():
        return fallback
    raise FileNotFoundError(f"config file {name!r} not found under {root} or packaged data")
