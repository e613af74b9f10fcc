"""Utility helpers for wboxdim."""
from __future__ import annotations

import os
import sys
from datetime import datetime, timezone
from typing import Iterable, Optional

import questionary
from rich.console import Console
from rich.table import Table

console = Console()


def confirm(question: str, default: bool = True, assume_yes: bool = False) -> bool:
    if assume_yes:
        return True
    if not sys.stdin.isatty():
        return default
    return bool(questionary.confirm(question, default=default).ask())


def info_table(title: str, rows: Iterable[tuple[str, str]]) -> None:
    table = Table(title=title, show_header=False)
    table.add_column("Property", style="bold")
    table.add_column("Value")
    for key, value in rows:
        table.add_row(key, value)
    console.print(table)


def format_real(value: float) -> str:
    """Shortest string that round-trips to the same double."""
    return repr(float(value))


def timestamp() -> Optional[str]:
    """ISO timestamp from SOURCE_DATE_EPOCH, or None so reruns stay byte-identical."""

    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if not epoch:
        return None
    try:
        moment = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    except ValueError:
        return None
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")
