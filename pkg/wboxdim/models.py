"""Data models for wboxdim runs and their reports."""
from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from . import constants
from .errors import InvalidInput
from .parameters import FractalParams, Reading, new_params
from .utils import timestamp

_KEY_ALIASES = {"lambda": "lam", "nb": "n_b", "m-min": "m_min", "m-max": "m_max"}


def _coerce(key: str, type_name: str, value: Any) -> Any:
    """Cast a config value to the field type; YAML reads 1e-12 as a string."""

    try:
        if "bool" in type_name:
            if isinstance(value, bool):
                return value
            raise ValueError(value)
        if isinstance(value, bool):
            raise ValueError(value)
        if "float" in type_name:
            return float(value)
        if "int" in type_name:
            number = float(value) if isinstance(value, str) else value
            if isinstance(number, float):
                if not number.is_integer():
                    raise ValueError(value)
                return int(number)
            return int(number)
        return str(value)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"invalid value {value!r} for {key} ({type_name})") from exc


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs, merged from defaults, a config file and flags."""

    lam: float = constants.DEFAULT_LAMBDA
    n_b: int = constants.DEFAULT_NB
    m: Optional[int] = None
    m_min: int = constants.DEFAULT_M_MIN
    m_max: int = constants.DEFAULT_M_MAX
    tol: float = constants.DEFAULT_TOLERANCE
    budget: Optional[int] = None
    seed: int = constants.DEFAULT_SEED
    out: Optional[str] = None
    format: Optional[str] = None
    polygons: bool = False
    x1: float = 0.0
    x2: float = 1.0
    samples: int = 1001
    reading: str = Reading.PRINTED.value

    def params(self) -> FractalParams:
        return new_params(self.lam, self.n_b)

    def level(self, default: int) -> int:
        return default if self.m is None else self.m

    @property
    def reading_mode(self) -> Reading:
        try:
            return Reading(self.reading)
        except ValueError as exc:
            choices = ", ".join(item.value for item in Reading)
            raise InvalidInput(f"reading must be one of {choices}, got {self.reading!r}") from exc

    def merged(self, overrides: Dict[str, Any]) -> "RunConfig":
        """Return a copy with every non-None override applied."""

        known = {item.name: str(item.type) for item in fields(self)}
        changes = {}
        for key, value in overrides.items():
            key = _KEY_ALIASES.get(key, key)
            if key not in known:
                raise InvalidInput(f"unknown configuration key {key!r}")
            if value is not None:
                changes[key] = _coerce(key, known[key], value)
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, object]:
        return {
            "lambda": self.lam,
            "n_b": self.n_b,
            "m": self.m,
            "m_min": self.m_min,
            "m_max": self.m_max,
            "tol": self.tol,
            "budget": self.budget,
            "seed": self.seed,
            "out": self.out,
            "format": self.format,
            "polygons": self.polygons,
            "x1": self.x1,
            "x2": self.x2,
            "samples": self.samples,
            "reading": self.reading,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "RunConfig":
        return cls().merged(dict(data))


def load_config_file(path: Path) -> Dict[str, Any]:
    """Parse a flat ``key=value`` / ``key: value`` file; values are YAML scalars."""

    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read config file {path}: {exc}") from exc

    data: Dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        separators = [index for index in (line.find("="), line.find(":")) if index >= 0]
        if not separators:
            raise InvalidInput(f"{path}:{number}: expected key=value, got {raw.strip()!r}")
        split_at = min(separators)
        key = line[:split_at].strip()
        value = line[split_at + 1 :].strip()
        try:
            data[key] = yaml.safe_load(value) if value else None
        except yaml.YAMLError as exc:
            raise InvalidInput(f"{path}:{number}: cannot parse value {value!r}") from exc
    return data


@dataclass(frozen=True)
class ReportEnvelope:
    tool_version: str
    config: Dict[str, object]
    timestamp: Optional[str]
    payload: Any

    @classmethod
    def wrap(cls, config: RunConfig, payload: Any) -> "ReportEnvelope":
        return cls(
            tool_version=constants.TOOL_VERSION,
            config=config.to_dict(),
            timestamp=timestamp(),
            payload=payload,
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "tool_version": self.tool_version,
            "config": self.config,
            "timestamp": self.timestamp,
            "payload": self.payload,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReportEnvelope":
        return cls(
            tool_version=str(data["tool_version"]),
            config=dict(data.get("config", {})),
            timestamp=data.get("timestamp"),
            payload=data.get("payload"),
        )
