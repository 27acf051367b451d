from __future__ import annotations

from enum import IntEnum

from xdg_base_dirs import xdg_config_home

DEFAULT_BUDGET = 10_000_000
MAX_COLORS = 8
MAX_EXACT_EDGES = 120
MAX_EXACT_VERTICES = 64
MAX_ISOMORPHISM_VERTICES = 64
MAX_KNNN_ORDER = 8
SETTINGS_TOML = xdg_config_home() / "gruenbaum" / "settings.toml"


HEADER_COLORING = "# coloring"
HEADER_DUAL = "# dual"
HEADER_FACES = "# faces"
HEADER_ROTATION = "# rotation"


class ExitCode(IntEnum):
    SUCCESS = 0
    FAILURE = 1
    USAGE = 2
    BUDGET = 3


__all__ = [
    "DEFAULT_BUDGET",
    "HEADER_COLORING",
    "HEADER_DUAL",
    "HEADER_FACES",
    "HEADER_ROTATION",
    "MAX_COLORS",
    "MAX_EXACT_EDGES",
    "MAX_EXACT_VERTICES",
    "MAX_ISOMORPHISM_VERTICES",
    "MAX_KNNN_ORDER",
    "SETTINGS_TOML",
    "ExitCode",
]
