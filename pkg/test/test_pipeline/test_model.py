# test/test_pipeline/test_model.py
"""Unit tests for Sullivan models and their structural constructions."""

import logging
import unittest

from sullivan_tc.errors import InvalidModelError, NotComputableError, StructuralError
from sullivan_tc.model import (
    Ellipticity,
    SullivanModel,
    change_of_basis,
    chi_pi,
    elliptic_extension,
    formal_dimension,
    free_odd_split,
    is_elliptic,
    quotient_A,
    recognize_extension,
    sub_extension,
    submodel,
    tensor_square,
    validate,
)


def example1() -> SullivanModel:
    return SullivanModel.from_degrees(
        [("x1", 4), ("x2", 6), ("y1", 7), ("y2", 11), ("y3", 9)],
        {
            "y1": lambda g: g["x1"] * g["x1"],
            "y2": lambda g: g["x2"] * g["x2"],
            "y3": lambda g: g["x1"] * g["x2"],
        },
        name="example1",
    )


def reduced_example1() -> SullivanModel:
    return SullivanModel.from_degrees(
        [("x1", 4), ("x2", 6), ("y3", 9)],
        {"y3": lambda g: g["x1"] * g["x2"]},
    )


class TestFlags(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def test_example1_flags(self):
        m = example1()
        report = validate(m)
        self.assertTrue(report.pure)
        self.assertTrue(report.coformal)
        self.assertTrue(report.minimal)
        self.assertEqual(report.word_length, 2)
        self.assertEqual(report.messages, ())
        self.assertEqual(chi_pi(m), -1)

    def test_non_pure_model(self):
        m = SullivanModel.from_degrees(
            [("x", 2), ("y", 3), ("z", 4)],
            {"z": lambda g: g["x"] * g["y"], "y": lambda g: g["x"] * g["x"]},
        )
        self.assertFalse(m.is_pure)
        with self.assertRaises(StructuralError):
            is_elliptic(m)

    def test_mixed_word_length(self):
        m = SullivanModel.from_degrees(
            [("x", 2), ("z", 4), ("y", 7)],
            {"y": lambda g: g["x"] * g["x"] * g["x"] * g["x"] + g["z"] * g["z"]},
        )
        self.assertFalse(m.is_coformal)
        self.assertIsNone(m.word_length)

    def test_d_squared_nonzero(self):
        m = SullivanModel.from_degrees(
            [("x", 2), ("y", 3), ("z", 2)],
            {"y": lambda g: g["x"] * g["x"], "z": lambda g: g["y"]},
        )
        with self.assertRaises(InvalidModelError) as context:
            validate(m)
        self.assertEqual(context.exception.generator, "z")

    def test_truncated_algebra_rejected(self):
        algebra = example1().algebra.truncated({"x1": 1})
        with self.assertRaises(StructuralError):
            SullivanModel(algebra, {})


class TestEllipticity(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def test_example1_is_elliptic(self):
        m = example1()
        self.assertIs(is_elliptic(m), Ellipticity.YES)
        self.assertEqual(formal_dimension(m), 19)

    def test_free_even_generator(self):
        m = SullivanModel.from_degrees([("x", 2), ("y", 3)])
        self.assertIs(is_elliptic(m), Ellipticity.NO)
        with self.assertRaises(NotComputableError):
            formal_dimension(m)

    def test_surviving_axis(self):
        self.assertIs(is_elliptic(reduced_example1()), Ellipticity.NO)

    def test_odd_sphere(self):
        m = SullivanModel.from_degrees([("y", 3)])
        self.assertIs(is_elliptic(m), Ellipticity.YES)
        self.assertEqual(formal_dimension(m), 3)

    def test_even_sphere(self):
        m = SullivanModel.from_degrees([("x", 2), ("y", 3)], {"y": lambda g: g["x"] * g["x"]})
        self.assertEqual(formal_dimension(m), 2)


class TestExtensions(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def test_adjoined_extension(self):
        e = elliptic_extension(example1())
        self.assertEqual(e.basis, ("x1", "x2"))
        self.assertEqual(e.u_names, ("u1", "u2"))
        self.assertTrue(e.adjoined)
        self.assertEqual(e.dimension, 2 * 2 + 3)
        self.assertEqual(e.extension.degree("u1"), 7)
        self.assertEqual(e.extension.degree("u2"), 11)
        x1 = e.extension.algebra.generator("x1")
        self.assertEqual(e.extension.derivation.image("u1"), x1 * x1)

    def test_basis_must_order_the_evens(self):
        with self.assertRaises(StructuralError):
            elliptic_extension(example1(), ["x1"])
        with self.assertRaises(StructuralError):
            elliptic_extension(example1(), ["x1", "y1"])

    def test_recognized_extension(self):
        e = recognize_extension(example1())
        self.assertIsNotNone(e)
        self.assertFalse(e.adjoined)
        self.assertEqual(e.u_names, ("y1", "y2"))
        self.assertEqual(e.y_names, ("y3",))
        self.assertEqual(e.dimension, 5)

    def test_not_an_extension(self):
        self.assertIsNone(recognize_extension(reduced_example1()))

    def test_sub_extension(self):
        e = recognize_extension(example1())
        sub = sub_extension(e, ["x1"], [])
        self.assertEqual(sub.basis, ("x1",))
        self.assertEqual(sub.u_names, ("y1",))
        self.assertEqual(sub.m, 0)

    def test_submodel_must_be_closed(self):
        with self.assertRaises(StructuralError):
            submodel(example1(), ["y3"])

    def test_free_odd_split(self):
        m = SullivanModel.from_degrees(
            [("x", 2), ("y", 3), ("z", 5)], {"y": lambda g: g["x"] * g["x"]}
        )
        self.assertEqual(free_odd_split(m), (("z",), ("x", "y")))


class TestQuotientAndSquares(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def test_quotient_of_example1(self):
        e = elliptic_extension(example1())
        A = quotient_A(e)
        self.assertEqual(A.top_degree, 37)
        self.assertEqual(A.dimension, 2**5)
        self.assertEqual(A.x_names, ("x1", "x2"))
        self.assertEqual(A.y_names, ("y1", "y2", "y3"))
        self.assertTrue(A.derivation.image("y1").is_zero)
        x1 = e.extension.algebra.generator("x1")
        self.assertTrue(A.phi(x1 * x1).is_zero)
        self.assertTrue(A.phi(e.extension.algebra.generator("u1")).is_zero)
        self.assertEqual(A.bidegree(A.top_monomial), (2, 3))

    def test_tensor_square(self):
        m = example1()
        square = tensor_square(m)
        self.assertEqual(square.prime("x1"), "x1'")
        self.assertEqual(len(square.square.algebra), 10)
        self.assertIsInstance(square.square, SullivanModel)
        for name in m.algebra.names:
            self.assertTrue(square.mu(square.zero_divisor(name)).is_zero)
        y3 = m.algebra.generator("y3")
        self.assertEqual(
            square.square.d(square.right(y3)), square.right(m.d(y3))
        )

    def test_priming_collision(self):
        m = SullivanModel.from_degrees([("y", 3), ("y'", 3)])
        with self.assertRaises(StructuralError):
            tensor_square(m)


class TestChangeOfBasis(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def setUp(self):
        self.m = SullivanModel.from_degrees(
            [("x1", 2), ("x2", 2), ("y1", 3), ("y2", 3)],
            {"y1": lambda g: g["x1"] * g["x1"], "y2": lambda g: g["x1"] * g["x2"]},
        )

    def test_scaling(self):
        changed = change_of_basis(self.m, [[2, 0], [0, 1]])
        x1 = changed.algebra.generator("x1")
        self.assertEqual(changed.derivation.image("y1"), x1 * x1 / 4)
        validate(changed)

    def test_singular(self):
        with self.assertRaises(StructuralError):
            change_of_basis(self.m, [[1, 1], [1, 1]])

    def test_mixed_degrees(self):
        m = example1()
        with self.assertRaises(StructuralError):
            change_of_basis(m, [[1, 1], [0, 1]])


if __name__ == "__main__":
    unittest.main()
