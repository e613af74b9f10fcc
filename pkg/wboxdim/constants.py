"""Project-wide constants."""
from __future__ import annotations

import os
from pathlib import Path

TOOL_NAME = "wboxdim"
TOOL_VERSION = "0.1.0"


def _state_home() -> Path:
    xdg_state_home = os.environ.get("XDG_STATE_HOME")
    if xdg_state_home:
        return Path(xdg_state_home)
    return Path.home() / ".local" / "state"


GLOBAL_CONFIG_PATHS = [
    Path("/etc/wboxdim/config.yaml"),
    Path("/usr/local/etc/wboxdim/config.yaml"),
]

DEFAULT_LOG_DIR = _state_home() / TOOL_NAME
SCHEMA_DIR = Path(__file__).resolve().parent / "schemas"
VERIFY_BOUNDS_SCHEMA = SCHEMA_DIR / "verify_bounds.schema.json"

# defaults for the numeric commands
DEFAULT_LAMBDA = 0.5
DEFAULT_NB = 3
DEFAULT_TOLERANCE = 1e-12
DEFAULT_SEED = 0

DEFAULT_VERTEX_LEVEL = 2
DEFAULT_POLYGON_LEVEL = 1
DEFAULT_VERIFY_LEVEL = 5
DEFAULT_PLOT_LEVEL = 2
DEFAULT_M_MIN = 3
DEFAULT_M_MAX = 8

# junction merge rule for V_m
MERGE_X_TOLERANCE = 1e-12
MERGE_Y_TOLERANCE = 1e-9

# slack on every theorem inequality
ABSOLUTE_SLACK = 1e-12
RELATIVE_SLACK = 1e-10

# floor(osc / eps) snaps values within this distance below an integer
COUNT_SNAP = 1e-9

SVG_WIDTH = 1200
SVG_HEIGHT = 800
SVG_MARGIN = 40
LEVEL_COLORS = ["green", "red", "orange", "purple", "blue", "magenta", "olive", "teal"]
PROXY_COLOR = "cyan"
POLYGON_COLOR = "black"

