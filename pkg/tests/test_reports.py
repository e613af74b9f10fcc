"""Tests for wboxdim.reports."""

from __future__ import annotations

import json
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase
from unittest.mock import patch

import jsonschema

from wboxdim.bounds import verify_theorem
from wboxdim.boxcount import BoxCountResult
from wboxdim.ifs import Word, build_v_m, polygons
from wboxdim.models import ReportEnvelope, RunConfig
from wboxdim.parameters import new_params
from wboxdim.reports import (
    bounds_payload,
    boxdim_csv,
    envelope_json,
    polygons_csv,
    read_vertices_csv,
    sidecar_path,
    summary_line,
    validate_bounds_payload,
    vertices_csv,
    write_text,
    write_with_sidecar,
)


class CsvTests(TestCase):
    def test_vertices_csv_header_and_readback(self) -> None:
        p = new_params(0.5, 3)
        vertices = build_v_m(p, 1)
        text = vertices_csv(vertices)
        self.assertEqual("index,x,y,word,j", text.splitlines()[0])
        self.assertEqual(8, len(text.splitlines()))

        rows = read_vertices_csv(text, p.n_b)
        self.assertEqual(list(range(7)), [row["index"] for row in rows])
        self.assertEqual(vertices.xs.tolist(), [row["x"] for row in rows])
        self.assertEqual(vertices.ys.tolist(), [row["y"] for row in rows])
        self.assertEqual(Word((0,)), rows[1]["word"])
        self.assertEqual(1, rows[1]["j"])

    def test_polygons_csv(self) -> None:
        p = new_params(0.5, 3)
        lines = polygons_csv(polygons(p, 1), p.n_b).splitlines()
        self.assertEqual("polygon,word,vertex,x,y", lines[0])
        self.assertEqual(1 + 3 * 3, len(lines))
        self.assertTrue(lines[-1].startswith("2,2,2,1.0,"))

    def test_boxdim_csv_and_summary(self) -> None:
        result = BoxCountResult(
            levels=[1, 2],
            scales=[1 / 6, 1 / 18],
            counts=[10, 40],
            slope=1.25,
            intercept=0.5,
            r_squared=1.0,
            certified_fraction=[0.0, 0.0],
        )
        self.assertEqual("m,epsilon,count", boxdim_csv(result).splitlines()[0])
        self.assertEqual("1,0.16666666666666666,10", boxdim_csv(result).splitlines()[1])
        self.assertEqual("slope=1.25 target=1.5 delta=-0.25 r2=1.0", summary_line(result, 1.5))


class JsonTests(TestCase):
    def test_bounds_payload_matches_schema(self) -> None:
        payload = bounds_payload(verify_theorem(new_params(0.5, 3), 2), 3)
        self.assertEqual(2, payload["m"])
        self.assertEqual(18, payload["pairs_checked"])
        self.assertIn(payload["worst"][0]["word"], {"00", "10", "12", "22"})

    def test_schema_rejects_extra_keys(self) -> None:
        payload = verify_theorem(new_params(0.5, 3), 1).to_payload(3)
        payload["residual"] = 0.0
        with self.assertRaises(jsonschema.ValidationError):
            validate_bounds_payload(payload)

    def test_envelope_json_is_stable(self) -> None:
        envelope = ReportEnvelope("0.1.0", RunConfig().to_dict(), None, {"d_w": 1.5})
        text = envelope_json(envelope)
        self.assertEqual(text, envelope_json(ReportEnvelope.from_dict(json.loads(text))))
        self.assertTrue(text.endswith("}\n"))


class WriteTests(TestCase):
    def test_sidecar_written_next_to_csv(self) -> None:
        with TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "out" / "v.csv"
            envelope = ReportEnvelope.wrap(RunConfig(m=1), {"level": 1})
            write_with_sidecar(path, "index\n0\n", envelope)
            self.assertEqual(Path(tmpdir) / "out" / "v.csv.meta.json", sidecar_path(path))
            self.assertEqual("index\n0\n", path.read_text())
            self.assertEqual({"level": 1}, json.loads(sidecar_path(path).read_text())["payload"])

    def test_existing_file_replaced_when_not_interactive(self) -> None:
        with TemporaryDirectory() as tmpdir, patch("wboxdim.utils.sys.stdin") as stdin:
            stdin.isatty.return_value = False
            path = Path(tmpdir) / "v.csv"
            path.write_text("old")
            self.assertTrue(write_text(path, "new"))
            self.assertEqual("new", path.read_text())
            self.assertTrue(write_text(path, "newer", assume_yes=True))
            self.assertEqual("newer", path.read_text())

    def test_existing_file_kept_when_declined(self) -> None:
        with TemporaryDirectory() as tmpdir, patch("wboxdim.reports.confirm", return_value=False):
            path = Path(tmpdir) / "v.csv"
            path.write_text("old")
            self.assertFalse(write_text(path, "new"))
            self.assertEqual("old", path.read_text())
