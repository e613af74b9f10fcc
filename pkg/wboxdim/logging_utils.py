"""Logging for wboxdim runs.

Command output (CSV rows, JSON envelopes, SVG, the ``slope=`` summary) owns
stdout, so the console log is written to stderr. At INFO it reports files
written and vertex counts; WARNING carries bound violations and ignored
settings. DEBUG adds the numerical trail of a run: series truncation depth
K with its tail and phase-error budget, oscillation refinement depth, box
counts per level and the settings file in use. The rotating file log always
records DEBUG.
"""
from __future__ import annotations

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from . import constants

_LOGGER_INITIALIZED = False
_FILE_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def _fallback_log_dir() -> Path:
    """Return a user-writable directory for wboxdim logs."""

    return Path.home() / f".{constants.TOOL_NAME}" / "log"


def _default_log_path() -> Path:
    log_path = constants.DEFAULT_LOG_DIR / f"{constants.TOOL_NAME}.log"
    try:
        log_path.parent.mkdir(parents=True, exist_ok=True)
    except PermissionError:
        fallback_dir = _fallback_log_dir()
        fallback_dir.mkdir(parents=True, exist_ok=True)
        log_path = fallback_dir / log_path.name
    return log_path


def _console_handler(verbose: bool) -> RichHandler:
    handler = RichHandler(
        console=Console(stderr=True),
        rich_tracebacks=True,
        show_time=False,
        show_path=False,
    )
    handler.setLevel(logging.DEBUG if verbose else logging.INFO)
    return handler


def _file_handler(log_path: Path) -> RotatingFileHandler:
    log_path.parent.mkdir(parents=True, exist_ok=True)
    handler = RotatingFileHandler(log_path, maxBytes=5_000_000, backupCount=5)
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(logging.Formatter(_FILE_FORMAT))
    return handler


def enable_debug_console() -> None:
    """Show the DEBUG trail (truncation depth, phase budget) on stderr."""

    for handler in logging.getLogger().handlers:
        if isinstance(handler, RichHandler):
            handler.setLevel(logging.DEBUG)


def configure_logging(verbose: bool = False, log_path: Optional[Path] = None) -> logging.Logger:
    """Configure the root logger once; later calls can only raise the console to DEBUG.

    ``--verbose`` is accepted before and after the command name, so the
    second call comes from the command itself after the callback has
    already set things up.
    """

    global _LOGGER_INITIALIZED
    logger = logging.getLogger()
    if _LOGGER_INITIALIZED:
        if verbose:
            enable_debug_console()
        return logger

    logger.setLevel(logging.DEBUG)
    logger.handlers.clear()
    logger.addHandler(_console_handler(verbose))

    log_path = _default_log_path() if log_path is None else Path(log_path)
    logger.addHandler(_file_handler(log_path))

    _LOGGER_INITIALIZED = True
    logger.debug("Logging initialized. Log file: %s", log_path)
    return logger


def get_logger(name: str) -> logging.Logger:
    """Return module logger after ensuring logging is configured."""

    if not _LOGGER_INITIALIZED:
        configure_logging()
    return logging.getLogger(name)
