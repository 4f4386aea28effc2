# test/test_pipeline/test_model_file.py
"""Unit tests for reading and writing model files."""

import logging
import os
import tempfile
import unittest

from sympy import QQ

from sullivan_tc.config import MODELS_DIR
from sullivan_tc.errors import ModelFileError
from sullivan_tc.gca import Generator, GradedAlgebra
from sullivan_tc.model_file import (
    format_model,
    load_model_file,
    parse_element,
    parse_model,
    parse_text,
)

EXAMPLE = """\
# dy3 = x1 x2
gen x1 4
gen x2 6
gen y1 odd
gen y2 odd
gen y3 odd
d y1 = x1^2
d y2 = x2**2
d y3 = x1*x2   # trailing comment
basis x2 x1
"""


class TestParsing(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def test_example(self):
        parsed = parse_text(EXAMPLE, "example")
        m = parsed.model
        self.assertEqual(m.name, "example")
        self.assertEqual(m.even_generators, ("x1", "x2"))
        self.assertEqual(m.odd_generators, ("y1", "y2", "y3"))
        self.assertEqual(m.degree("y1"), 7)
        self.assertEqual(m.degree("y2"), 11)
        self.assertEqual(m.degree("y3"), 9)
        self.assertEqual(parsed.bases, [("x2", "x1")])
        self.assertFalse(parsed.formal)

    def test_default_even_degree(self):
        parsed = parse_text("default even 4\ngen x even\ngen y odd\ngen z odd\nd y = x^2\n")
        self.assertEqual(parsed.model.degree("x"), 4)
        self.assertEqual(parsed.model.degree("y"), 7)
        self.assertEqual(parsed.model.degree("z"), 7)

    def test_odd_factors_keep_their_order(self):
        algebra = GradedAlgebra([Generator("a", 3), Generator("b", 3), Generator("x", 2)])
        g = algebra.generators_as_elements()
        self.assertEqual(parse_element(algebra, "b*a"), -(g["a"] * g["b"]))
        self.assertEqual(parse_element(algebra, "a*a"), algebra.zero)
        self.assertEqual(parse_element(algebra, "x^2/2"), g["x"] * g["x"] * QQ(1, 2))

    def test_blocks(self):
        text = (
            "gen x1 2\ngen x2 2\ngen y1 odd\ngen y2 odd\n"
            "d y1 = x1^2\nd y2 = x1*x2 + x2^2\n"
            "transform x1 = x1 + 1/2*x2\nformal\nfamily split y1 x2\n"
        )
        parsed = parse_text(text)
        self.assertEqual(parsed.transform, ((1, QQ(1, 2)), (0, 1)))
        self.assertTrue(parsed.formal)
        self.assertEqual(parsed.families, [("split", "y1", "x2")])
        options = parsed.bound_options(with_witnesses=False)
        self.assertTrue(options.assume_formal)
        self.assertFalse(options.with_witnesses)
        self.assertEqual(len(options.transforms), 1)

    def test_round_trip(self):
        parsed = parse_text(EXAMPLE, "example")
        again = parse_text(format_model(parsed), "example")
        self.assertEqual(again.model.algebra.names, parsed.model.algebra.names)
        for name in parsed.model.algebra.names:
            self.assertEqual(again.model.degree(name), parsed.model.degree(name))
            self.assertEqual(
                str(again.model.derivation.image(name)), str(parsed.model.derivation.image(name))
            )
        self.assertEqual(again.bases, parsed.bases)

    def test_shipped_models_load(self):
        for path in sorted(MODELS_DIR.glob("*.model")):
            parsed = load_model_file(path)
            self.assertEqual(parsed.model.name, path.stem)
            self.assertEqual(parsed.path, path)


class TestErrors(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def assertLocated(self, text: str, line: int, column: int | None = None):
        with self.assertRaises(ModelFileError) as context:
            parse_text(text)
        self.assertEqual(context.exception.line, line)
        if column is not None:
            self.assertEqual(context.exception.column, column)

    def test_unknown_generator(self):
        self.assertLocated("gen x 2\ngen y 3\nd y = x*q\n", 3, 9)

    def test_generator_used_before_declaration(self):
        self.assertLocated("gen y 3\nd y = x^2\ngen x 2\n", 2, 7)

    def test_duplicate_generator(self):
        self.assertLocated("gen x 2\ngen x 4\n", 2, 5)

    def test_unknown_directive(self):
        self.assertLocated("gen x 2\nfoo x\n", 2, 1)

    def test_degree_mismatch(self):
        self.assertLocated("gen x 2\ngen y 4\nd y = x^2\n", 3)

    def test_even_degree_for_odd_generator(self):
        self.assertLocated("gen x 2\ngen y odd\ngen z 3\nd y = x*z\n", 2)

    def test_d_squared(self):
        self.assertLocated("gen x 2\ngen y 3\ngen z 2\nd y = x^2\nd z = y\n", 5)

    def test_bad_basis(self):
        self.assertLocated("gen x1 2\ngen x2 2\nbasis x1\n", 3)

    def test_bad_family(self):
        self.assertLocated("gen x 2\nfamily split x\n", 2)

    def test_syntax_error(self):
        self.assertLocated("gen x 2\ngen y 3\nd y = (x*x\n", 3)

    def test_missing_file(self):
        with self.assertRaises(ModelFileError) as context:
            parse_model(os.path.join(tempfile.gettempdir(), "no_such_dir", "missing.model"))
        self.assertIsNone(context.exception.line)

    def test_file_on_disk(self):
        with tempfile.NamedTemporaryFile("w", suffix=".model", delete=False) as handle:
            handle.write("gen x 2\ngen y 3\nd y = x^2\n")
            path = handle.name
        try:
            m = parse_model(path)
            self.assertEqual(m.name, os.path.splitext(os.path.basename(path))[0])
            self.assertEqual(m.degree("y"), 3)
        finally:
            os.remove(path)


if __name__ == "__main__":
    unittest.main()
