# test/test_pipeline/test_config.py
"""Unit tests for computation defaults and the logging setup."""

import json
import logging
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from sullivan_tc.config import DEFAULTS, load_defaults, setup_logging


class TestDefaults(unittest.TestCase):
    def test_packaged_defaults(self):
        self.assertEqual(load_defaults(), DEFAULTS)
        self.assertEqual(DEFAULTS["default_even_degree"] % 2, 0)

    def test_overrides(self):
        with tempfile.TemporaryDirectory() as folder:
            path = Path(folder) / "defaults.json"
            path.write_text(json.dumps({"f0_subset_cap": 3}), encoding="utf-8")
            merged = load_defaults(path)
        self.assertEqual(merged["f0_subset_cap"], 3)
        self.assertEqual(merged["prime_suffix"], DEFAULTS["prime_suffix"])

    def test_unknown_key(self):
        with tempfile.TemporaryDirectory() as folder:
            path = Path(folder) / "defaults.json"
            path.write_text(json.dumps({"colour": "red"}), encoding="utf-8")
            with self.assertRaises(ValueError):
                load_defaults(path)

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            load_defaults(Path(tempfile.gettempdir()) / "missing" / "defaults.json")


class TestSetupLogging(unittest.TestCase):
    @patch("logging.config.dictConfig")
    def test_console_only(self, mock_config):
        setup_logging(file_logging=False, console_level="warning")
        config = mock_config.call_args[0][0]
        self.assertEqual(list(config["handlers"]), ["console"])
        self.assertEqual(config["handlers"]["console"]["level"], "WARNING")
        self.assertEqual(config["loggers"]["sullivan_tc"]["handlers"], ["console"])

    @patch("logging.config.dictConfig")
    def test_dated_log_files(self, mock_config):
        with tempfile.TemporaryDirectory() as folder:
            setup_logging(project_root=Path(folder), date_fmt="fixed")
            config = mock_config.call_args[0][0]
            filename = config["handlers"]["info_file_handler"]["filename"]
            self.assertEqual(Path(filename), Path(folder) / "logs" / "fixed" / "info.log")
            self.assertTrue(os.path.isdir(Path(folder) / "logs" / "fixed"))

    @patch("logging.config.dictConfig", side_effect=ValueError("bad config"))
    def test_fallback_to_basic_config(self, _):
        with patch("logging.basicConfig") as mock_basic:
            logging.disable(logging.CRITICAL)
            try:
                setup_logging(file_logging=False)
            finally:
                logging.disable(logging.NOTSET)
        mock_basic.assert_called_once()


if __name__ == "__main__":
    unittest.main()
