"""Tests for wboxdim.settings lookup and fallbacks."""

from __future__ import annotations

import os
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase
from unittest.mock import patch

from wboxdim import constants
from wboxdim.errors import InvalidInput
from wboxdim.settings import DEFAULT_SETTINGS, Settings, SettingsStore


class SettingsStoreTests(TestCase):
    def test_missing_file_gives_defaults(self) -> None:
        with TemporaryDirectory() as tmpdir:
            store = SettingsStore(Path(tmpdir) / "absent.yaml")
            self.assertEqual(DEFAULT_SETTINGS, store.load())

    def test_user_path_used_when_no_global_file(self) -> None:
        with TemporaryDirectory() as tmpdir:
            xdg_config_home = Path(tmpdir) / "config"
            with patch.dict(os.environ, {"XDG_CONFIG_HOME": str(xdg_config_home)}, clear=False):
                with patch.object(constants, "GLOBAL_CONFIG_PATHS", [Path(tmpdir) / "etc" / "config.yaml"]):
                    store = SettingsStore()

        self.assertEqual(xdg_config_home / "wboxdim" / "config.yaml", store.path)

    def test_load_merges_known_keys_and_casts(self) -> None:
        with TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "config.yaml"
            path.write_text("verify_budget: 1e5\nrefine_threshold: 0.05\nunknown_key: 3\n")
            settings = SettingsStore(path).load()

        self.assertEqual(100000, settings.verify_budget)
        self.assertEqual(0.05, settings.refine_threshold)
        self.assertEqual(DEFAULT_SETTINGS.box_samples, settings.box_samples)

    def test_fractional_integer_setting_is_rejected(self) -> None:
        with self.assertRaises(InvalidInput):
            Settings().updated({"worst_count": 2.5})

    def test_save_falls_back_when_directory_unwritable(self) -> None:
        """save should fall back to the user config file on PermissionError."""

        with TemporaryDirectory() as tmpdir:
            xdg_config_home = Path(tmpdir) / "config"
            fallback_path = xdg_config_home / "wboxdim" / "config.yaml"
            blocked = Path(tmpdir) / "etc" / "wboxdim" / "config.yaml"
            original_mkdir = Path.mkdir

            def fake_mkdir(path_obj: Path, *args, **kwargs):  # type: ignore[override]
                if path_obj == blocked.parent:
                    raise PermissionError("cannot create system config directory")
                return original_mkdir(path_obj, *args, **kwargs)

            with patch.dict(os.environ, {"XDG_CONFIG_HOME": str(xdg_config_home)}, clear=False):
                store = SettingsStore(blocked)
                with patch("pathlib.Path.mkdir", autospec=True) as mocked_mkdir:
                    mocked_mkdir.side_effect = fake_mkdir
                    store.save(Settings(worst_count=7))

            self.assertEqual(fallback_path, store.path)
            self.assertTrue(store.path.exists(), "Fallback config file should be created")
            self.assertEqual(7, SettingsStore(fallback_path).load().worst_count)
