"""Numeric defaults and their YAML settings file."""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Dict, Optional

import yaml

from . import constants
from .errors import InvalidInput
from .logging_utils import get_logger

LOGGER = get_logger(__name__)


@dataclass(frozen=True)
class Settings:
    """Budgets, caps and sampling depths shared by every operation."""

    vertex_budget: int = 10**7
    truncation_cap: int = 10**4
    oscillation_samples: int = 32
    oscillation_cap: int = 2**15
    box_samples: int = 32
    box_sample_cap: int = 128
    refine_threshold: float = 0.01
    box_tolerance: float = 1e-9
    verify_budget: int = 10**6
    worst_count: int = 5
    plot_budget: int = 12
    plot_proxy_level: int = 10
    plot_point_budget: int = 200_000

    def updated(self, data: Dict[str, object]) -> "Settings":
        known = {item.name: item.type for item in fields(self)}
        changes: Dict[str, object] = {}
        for key, value in data.items():
            if key not in known:
                LOGGER.warning("Ignoring unknown setting %s", key)
                continue
            current = getattr(self, key)
            try:
                if isinstance(current, int) and isinstance(value, (str, float)):
                    value = float(value)
                    if not value.is_integer():
                        raise ValueError(value)
                changes[key] = type(current)(value)
            except (TypeError, ValueError) as exc:
                raise InvalidInput(f"invalid value {value!r} for setting {key}") from exc
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


DEFAULT_SETTINGS = Settings()


class SettingsStore:
    """Locate, read and write the wboxdim settings file."""

    def __init__(self, path: Optional[Path] = None) -> None:
        self.path = path or self._select_path()

    def _select_path(self) -> Path:
        for path in constants.GLOBAL_CONFIG_PATHS:
            if path.exists():
                return path
        return self._user_config_path()

    def _user_config_path(self) -> Path:
        xdg_config_home = os.environ.get("XDG_CONFIG_HOME")
        if xdg_config_home:
            base = Path(xdg_config_home)
        else:
            base = Path.home() / ".config"
        return base / constants.TOOL_NAME / "config.yaml"

    def load(self) -> Settings:
        if not self.path.exists():
            return DEFAULT_SETTINGS
        data = yaml.safe_load(self.path.read_text()) or {}
        if not isinstance(data, dict):
            LOGGER.warning("Settings file %s is not a mapping; using defaults", self.path)
            return DEFAULT_SETTINGS
        LOGGER.debug("Loaded settings from %s", self.path)
        return DEFAULT_SETTINGS.updated(data)

    def save(self, settings: Settings) -> None:
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
        except PermissionError:
            fallback = self._user_config_path()
            LOGGER.warning("Cannot write %s; saving to %s instead", self.path, fallback)
            fallback.parent.mkdir(parents=True, exist_ok=True)
            self.path = fallback
        self.path.write_text(yaml.safe_dump(settings.to_dict(), sort_keys=False))
        os.chmod(self.path, 0o644)
