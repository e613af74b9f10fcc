"""Tests for wboxdim.models."""

from __future__ import annotations

import os
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase
from unittest.mock import patch

from wboxdim import constants
from wboxdim.errors import ContractivityViolation, InvalidInput
from wboxdim.models import ReportEnvelope, RunConfig, load_config_file
from wboxdim.parameters import Reading


class ConfigFileTests(TestCase):
    def _write(self, text: str) -> Path:
        tmpdir = TemporaryDirectory()
        self.addCleanup(tmpdir.cleanup)
        path = Path(tmpdir.name) / "run.conf"
        path.write_text(text)
        return path

    def test_both_separators_and_comments(self) -> None:
        path = self._write("# reference run\nlambda=0.5\nnb: 4\n\ntol=1e-12  # series\npolygons: true\n")
        data = load_config_file(path)
        self.assertEqual({"lambda": 0.5, "nb": 4, "tol": "1e-12", "polygons": True}, data)

    def test_file_values_are_cast_to_field_types(self) -> None:
        path = self._write("lambda=0.5\nnb=4\ntol=1e-12\nbudget=1e6\nm-min=2\n")
        config = RunConfig().merged(load_config_file(path))
        self.assertEqual(0.5, config.lam)
        self.assertEqual(4, config.n_b)
        self.assertEqual(1e-12, config.tol)
        self.assertEqual(1_000_000, config.budget)
        self.assertEqual(2, config.m_min)

    def test_malformed_line(self) -> None:
        with self.assertRaises(InvalidInput):
            load_config_file(self._write("lambda 0.5\n"))

    def test_missing_file(self) -> None:
        with self.assertRaises(InvalidInput):
            load_config_file(Path("/nonexistent/wboxdim/run.conf"))


class RunConfigTests(TestCase):
    def test_defaults(self) -> None:
        config = RunConfig()
        self.assertEqual(constants.DEFAULT_LAMBDA, config.lam)
        self.assertEqual(constants.DEFAULT_NB, config.n_b)
        self.assertEqual(7, config.level(7))
        self.assertEqual(Reading.PRINTED, config.reading_mode)

    def test_flags_override_file_and_none_is_ignored(self) -> None:
        config = RunConfig().merged({"lambda": 0.4, "m": 3}).merged({"lam": 0.7, "m": None})
        self.assertEqual(0.7, config.lam)
        self.assertEqual(3, config.level(7))

    def test_unknown_key_and_bad_values(self) -> None:
        with self.assertRaises(InvalidInput):
            RunConfig().merged({"colour": "red"})
        with self.assertRaises(InvalidInput):
            RunConfig().merged({"m": 2.5})
        with self.assertRaises(InvalidInput):
            RunConfig().merged({"polygons": "maybe"})
        with self.assertRaises(InvalidInput):
            RunConfig(reading="loose").reading_mode

    def test_params_are_validated(self) -> None:
        with self.assertRaises(ContractivityViolation):
            RunConfig(lam=0.2).params()

    def test_dict_round_trip(self) -> None:
        config = RunConfig(lam=0.4, n_b=4, m=2, out="v.csv", reading="non-degenerate")
        self.assertEqual(0.4, config.to_dict()["lambda"])
        self.assertEqual(config, RunConfig.from_dict(config.to_dict()))


class ReportEnvelopeTests(TestCase):
    def test_timestamp_follows_source_date_epoch(self) -> None:
        with patch.dict(os.environ, {"SOURCE_DATE_EPOCH": "0"}):
            envelope = ReportEnvelope.wrap(RunConfig(), {"d_w": 1.5})
        self.assertEqual("1970-01-01T00:00:00Z", envelope.timestamp)
        self.assertEqual(constants.TOOL_VERSION, envelope.tool_version)

    def test_timestamp_absent_without_epoch(self) -> None:
        environ = {key: value for key, value in os.environ.items() if key != "SOURCE_DATE_EPOCH"}
        with patch.dict(os.environ, environ, clear=True):
            envelope = ReportEnvelope.wrap(RunConfig(), [])
        self.assertIsNone(envelope.timestamp)
        self.assertEqual(envelope, ReportEnvelope.from_dict(envelope.to_dict()))
