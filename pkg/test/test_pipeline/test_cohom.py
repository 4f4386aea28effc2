# test/test_pipeline/test_cohom.py
"""Unit tests for cohomology tables, cup products and Poincaré duality."""

import logging
import unittest

import pytest

from sullivan_tc.cohom import (
    CohomologyClass,
    bigraded_cohomology,
    cohomology,
    cup,
    fundamental_class,
    poincare_dual,
    poincare_polynomial,
    quasi_isomorphism_ranks,
    solve_coboundary,
)
from sullivan_tc.config import MODELS_DIR
from sullivan_tc.errors import NotComputableError, StructuralError
from sullivan_tc.model import SullivanModel, elliptic_extension, quotient_A
from sullivan_tc.model_file import parse_model


def sphere(degree: int) -> SullivanModel:
    if degree % 2:
        return SullivanModel.from_degrees([("y", degree)])
    return SullivanModel.from_degrees(
        [("x", degree), ("y", 2 * degree - 1)], {"y": lambda g: g["x"] * g["x"]}
    )


class TestSpheres(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def test_odd_sphere(self):
        table = cohomology(sphere(3))
        self.assertEqual(poincare_polynomial(table), {0: 1, 3: 1})

    def test_even_sphere(self):
        table = cohomology(sphere(4))
        self.assertEqual(poincare_polynomial(table), {0: 1, 4: 1})
        (x,) = table.basis(4)
        self.assertTrue(table.cup(x, x).is_zero)

    def test_truncation_beyond_formal_dimension(self):
        with self.assertRaises(NotComputableError):
            cohomology(sphere(2), 5)

    def test_truncated_table_refuses_higher_degrees(self):
        table = cohomology(sphere(2), 1)
        self.assertEqual(table.dimension(0), 1)
        with self.assertRaises(NotComputableError):
            table.dimension(2)

    def test_non_elliptic_model(self):
        m = SullivanModel.from_degrees([("x", 2)])
        with self.assertRaises(NotComputableError):
            cohomology(m)

    def test_class_of_rejects_non_cocycles(self):
        m = sphere(2)
        table = cohomology(m)
        with self.assertRaises(StructuralError):
            table.class_of(m.algebra.generator("y"))

    def test_coboundary(self):
        m = sphere(2)
        table = cohomology(m)
        x = m.algebra.generator("x")
        self.assertTrue(table.is_coboundary(x * x))
        self.assertFalse(table.is_coboundary(x))


class TestExample1(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)
        cls.model = parse_model(MODELS_DIR / "example1.model")
        cls.table = cohomology(cls.model)
        cls.extension = elliptic_extension(cls.model)
        cls.A = quotient_A(cls.extension)
        cls.bigraded = bigraded_cohomology(cls.A)

    def test_poincare_duality_of_betti_numbers(self):
        betti = self.table.dimensions()
        self.assertEqual(self.table.max_degree, 19)
        self.assertEqual(betti[0], 1)
        self.assertEqual(betti[19], 1)
        for degree in range(20):
            self.assertEqual(betti[degree], betti[19 - degree])

    def test_fundamental_class_of_A(self):
        top = fundamental_class(self.A, self.bigraded)
        self.assertEqual(top.degree, 37)
        self.assertFalse(top.is_zero)

    def test_odd_classes(self):
        # x_i times anything in Λ(y1, y2, y3): all cocycles, no coboundaries
        odd = self.bigraded.odd_classes()
        self.assertEqual(len(odd), 16)
        for cls in odd:
            self.assertEqual(self.bigraded.bidegree(cls)[0], 1)

    def test_poincare_dual(self):
        x1 = self.bigraded.class_of(self.A.algebra.generator("x1"))
        dual = poincare_dual(self.bigraded, x1)
        self.assertEqual(dual.degree, 37 - 4)
        self.assertEqual(cup(self.bigraded, x1, dual), fundamental_class(self.A, self.bigraded))

    def test_bidegree_of_representatives(self):
        for p, q in ((1, 0), (1, 1), (2, 0)):
            for cls in self.bigraded.classes_of_bidegree(p, q):
                rep = self.bigraded.representative(cls)
                for monomial in rep.terms:
                    self.assertEqual(self.A.bidegree(monomial), (p, q))

    def test_product_of_odd_classes(self):
        g = self.A.algebra.generators_as_elements()
        z1 = self.bigraded.class_of(g["x1"])
        z2 = self.bigraded.class_of(g["x2"] * g["y3"])
        self.assertFalse(self.bigraded.cup(z1, z2).is_zero)

    def test_class_addition(self):
        (x1,) = self.bigraded.basis(4)
        doubled = x1 + x1
        self.assertEqual(doubled, x1.scaled(2))
        with self.assertRaises(StructuralError):
            _ = x1 + CohomologyClass(6, (1,))

    def test_solve_coboundary(self):
        g = self.A.algebra.generators_as_elements()
        target = g["x1"] * g["x2"]
        solution = solve_coboundary(self.A, target, self.A.algebra.monomials_of_degree(9))
        self.assertIsNotNone(solution)
        self.assertEqual(self.A.d(solution), target)
        self.assertIsNone(
            solve_coboundary(self.A, g["x1"], self.A.algebra.monomials_of_degree(3))
        )

    def test_quasi_isomorphism(self):
        for degree, (source, target, rank) in quasi_isomorphism_ranks(
            self.extension, self.A
        ).items():
            self.assertEqual(source, target, degree)
            self.assertEqual(rank, target, degree)


@pytest.mark.slow
class TestExample2(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def test_quasi_isomorphism(self):
        model = parse_model(MODELS_DIR / "example2.model")
        e = elliptic_extension(model)
        for source, target, rank in quasi_isomorphism_ranks(e).values():
            self.assertEqual(source, target)
            self.assertEqual(rank, target)


if __name__ == "__main__":
    unittest.main()
