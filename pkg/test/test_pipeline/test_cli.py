# test/test_pipeline/test_cli.py
"""Unit tests for the command-line front end."""

import io
import logging
import os
import tempfile
import unittest
from unittest.mock import patch

import pytest

from sullivan_tc.cli import COMMANDS, build_parser, main, render, run
from sullivan_tc.config import MODELS_DIR

EXAMPLE1 = MODELS_DIR / "example1.model"
EXAMPLE2 = MODELS_DIR / "example2.model"


def write_model(text: str) -> str:
    with tempfile.NamedTemporaryFile("w", suffix=".model", delete=False) as handle:
        handle.write(text)
        return handle.name


class TestRun(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)
        cls.non_elliptic = write_model("gen x 2\ngen y 3\n")
        cls.broken = write_model("gen x 2\ngen y 3\nd y = x*q\n")
        cls.invalid = write_model("gen x 2\ngen y 3\ngen z 2\nd y = x^2\nd z = y\n")

    @classmethod
    def tearDownClass(cls):
        """Re-enable logging and remove the temporary model files."""
        logging.disable(logging.NOTSET)
        for path in (cls.non_elliptic, cls.broken, cls.invalid):
            os.remove(path)

    def test_validate(self):
        result = run("validate", EXAMPLE1)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.get("model.pure"), True)
        self.assertEqual(result.get("model.elliptic"), "yes")
        self.assertEqual(result.get("model.chi_pi"), -1)
        self.assertIn("model.coformal = true\n", result.text)

    def test_bounds(self):
        result = run("bounds", EXAMPLE1)
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.get("bounds.interval"), [5, 5])
        self.assertEqual(result.get("bounds.lower.theorem53"), 5)
        self.assertEqual(result.get("bounds.lower.omega"), 3)
        self.assertIn("bounds.interval = [5, 5]\n", result.text)
        self.assertIn("bounds.exact = true\n", result.text)

    def test_bounds_without_witnesses(self):
        result = run("bounds", EXAMPLE1, {"no_witnesses": True})
        self.assertIsNone(result.get("bounds.lower.theorem53"))
        self.assertEqual(result.get("bounds.interval"), [5, 5])

    def test_cohomology(self):
        result = run("cohomology", EXAMPLE1)
        self.assertEqual(result.get("cohomology.max_degree"), 19)
        self.assertEqual(result.get("cohomology.H.0"), 1)
        self.assertEqual(result.get("cohomology.H.19"), 1)

    def test_invariants(self):
        result = run("invariants", EXAMPLE1)
        self.assertEqual(result.get("invariants.formal_dimension"), 19)
        self.assertEqual(result.get("invariants.category"), 3)
        self.assertEqual(result.get("invariants.odd_cuplength"), 2)

    def test_witness(self):
        result = run("witness", EXAMPLE1, {"construction": "theorem53"})
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.get("witness.construction"), "theorem53")
        self.assertEqual(result.get("witness.power"), 5)
        self.assertEqual(result.get("witness.certified_lower_bound"), 5)
        self.assertEqual(result.get("witness.blocks"), ["Omega", "beta"])

    def test_builder_names_still_accepted(self):
        result = run("witness", EXAMPLE1, {"construction": "single-odd"})
        self.assertEqual(result.get("witness.construction"), "theorem53")
        self.assertEqual(result.get("witness.power"), 5)

    def test_omega_witness(self):
        result = run("witness", EXAMPLE1, {"construction": "omega"})
        self.assertEqual(result.get("witness.construction"), "omega")
        self.assertEqual(result.get("witness.power"), 3)

    @pytest.mark.slow
    def test_single_odd_witness_on_example2(self):
        result = run("witness", EXAMPLE2, {"construction": "theorem53"})
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.get("witness.power"), 9)
        self.assertEqual(abs(result.get("witness.scalar")), 16)
        self.assertEqual(result.get("witness.certified_lower_bound"), 9)

    def test_refused_witness(self):
        result = run("witness", MODELS_DIR / "even_sphere.model", {"construction": "theorem53"})
        self.assertEqual(result.exit_code, 2)
        self.assertEqual(result.get("error.kind"), "NotComputableError")

    def test_syntax_error(self):
        result = run("validate", self.broken)
        self.assertEqual(result.exit_code, 1)
        self.assertIn("line 3", result.get("error"))

    def test_missing_file(self):
        result = run("validate", os.path.join(tempfile.gettempdir(), "missing", "x.model"))
        self.assertEqual(result.exit_code, 1)
        self.assertEqual(result.get("error.kind"), "ModelFileError")

    def test_invalid_differential(self):
        self.assertEqual(run("bounds", self.invalid).exit_code, 1)

    def test_non_elliptic(self):
        self.assertEqual(run("validate", self.non_elliptic).get("model.elliptic"), "no")
        result = run("bounds", self.non_elliptic)
        self.assertEqual(result.exit_code, 2)
        self.assertIn("error.kind = NotComputableError\n", result.text)

    def test_text_summary(self):
        result = run("bounds", MODELS_DIR / "odd_sphere.model", {"text": True})
        self.assertTrue(result.text.startswith("bounds odd_sphere\n"))
        self.assertIn("TC in [1, 1] (exact)", result.text)

    def test_unknown_command(self):
        with self.assertRaises(ValueError):
            run("plot", EXAMPLE1)


class TestRender(unittest.TestCase):
    def test_values(self):
        text = render([("a", True), ("b", None), ("c", [1, None]), ("d", "x")])
        self.assertEqual(text, "a = true\nb = none\nc = [1, none]\nd = x\n")


class TestMain(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def test_parser_knows_every_command(self):
        parser = build_parser()
        for command in COMMANDS:
            args = parser.parse_args([command, str(EXAMPLE1)])
            self.assertEqual(args.command, command)

    def test_construction_names(self):
        for name in ("omega", "theorem51", "theorem53", "family4"):
            args = build_parser().parse_args(["witness", str(EXAMPLE2), "--construction", name])
            self.assertEqual(args.construction, name)

    def test_bad_construction_rejected(self):
        with patch("sys.stderr", new_callable=io.StringIO), self.assertRaises(SystemExit):
            build_parser().parse_args(["witness", str(EXAMPLE1), "--construction", "magic"])

    @patch("sullivan_tc.cli.setup_logging")
    def test_main(self, mock_setup):
        with patch("sys.stdout", new_callable=io.StringIO) as stdout:
            code = main(["validate", str(EXAMPLE1), "-v"])
        self.assertEqual(code, 0)
        self.assertIn("model.name = example1\n", stdout.getvalue())
        mock_setup.assert_called_once_with(file_logging=False, console_level="DEBUG")


if __name__ == "__main__":
    unittest.main()
