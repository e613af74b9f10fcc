"""CSV and JSON report emission, envelope sidecars and schema checks."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

import jsonschema

from . import constants
from .bounds import BoundsReport
from .boxcount import BoxCountResult
from .errors import InvalidInput
from .ifs import Polygon, VertexSet, Word
from .logging_utils import get_logger
from .models import ReportEnvelope
from .series import OscillationEstimate
from .utils import confirm, format_real

LOGGER = get_logger(__name__)


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_real(item) if isinstance(item, float) else item for item in row])
    return buffer.getvalue()


def vertices_csv(vertices: VertexSet) -> str:
    rows = (
        (
            index,
            float(vertices.xs[index]),
            float(vertices.ys[index]),
            vertices.word_at(index).encode(vertices.n_b),
            int(vertices.js[index]),
        )
        for index in range(len(vertices))
    )
    return _csv_text(("index", "x", "y", "word", "j"), rows)


def polygons_csv(items: List[Polygon], n_b: int) -> str:
    rows = (
        (number, polygon.cell_word.encode(n_b), vertex, point.x, point.y)
        for number, polygon in enumerate(items)
        for vertex, point in enumerate(polygon.vertices)
    )
    return _csv_text(("polygon", "word", "vertex", "x", "y"), rows)


def polygons_payload(items: List[Polygon], n_b: int) -> List[Dict[str, object]]:
    return [
        {
            "polygon": number,
            "word": polygon.cell_word.encode(n_b),
            "vertices": [point.to_dict() for point in polygon.vertices],
        }
        for number, polygon in enumerate(items)
    ]


def boxdim_csv(result: BoxCountResult) -> str:
    return _csv_text(("m", "epsilon", "count"), result.rows())


def summary_line(result: BoxCountResult, d_w: float) -> str:
    return "slope=%s target=%s delta=%s r2=%s" % (
        format_real(result.slope),
        format_real(d_w),
        format_real(result.slope - d_w),
        format_real(result.r_squared),
    )


def oscillation_csv(estimate: OscillationEstimate) -> str:
    return _csv_text(
        ("lo", "hi", "osc", "samples_used"),
        [(estimate.lo, estimate.hi, estimate.osc, estimate.samples_used)],
    )


def envelope_json(envelope: ReportEnvelope) -> str:
    try:
        return json.dumps(envelope.to_dict(), indent=2, allow_nan=False) + "\n"
    except ValueError as exc:
        raise InvalidInput(f"report contains a non-finite number: {exc}") from exc


def validate_bounds_payload(payload: Dict[str, Any]) -> None:
    """Raise jsonschema.ValidationError unless the payload matches the verify-bounds schema."""

    schema = json.loads(constants.VERIFY_BOUNDS_SCHEMA.read_text())
    jsonschema.validate(instance=payload, schema=schema)


def bounds_payload(report: BoundsReport, n_b: int) -> Dict[str, Any]:
    payload = report.to_payload(n_b)
    validate_bounds_payload(payload)
    return payload


def sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


def write_text(path: Path, text: str, assume_yes: bool = False) -> bool:
    """Write ``text`` to ``path``; an existing file is replaced only after confirmation."""

    path = Path(path)
    if path.exists() and not confirm(f"{path} exists. Overwrite?", default=True, assume_yes=assume_yes):
        LOGGER.warning("Left %s untouched", path)
        return False
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    LOGGER.info("Wrote %s", path)
    return True


def write_with_sidecar(path: Path, text: str, envelope: ReportEnvelope, assume_yes: bool = False) -> None:
    if write_text(path, text, assume_yes):
        write_text(sidecar_path(Path(path)), envelope_json(envelope), assume_yes=True)


def read_vertices_csv(text: str, n_b: int) -> List[Dict[str, object]]:
    """Parse ``vertices_csv`` output back into typed rows."""

    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append(
            {
                "index": int(row["index"]),
                "x": float(row["x"]),
                "y": float(row["y"]),
                "word": Word.decode(row["word"], n_b),
                "j": int(row["j"]),
            }
        )
    return rows
