# test/test_pipeline/test_witness.py
"""Unit tests for the explicit zero-divisor witnesses."""

import logging
import random
import unittest
from itertools import combinations

import pytest
from sympy import QQ

from sullivan_tc.config import MODELS_DIR
from sullivan_tc.errors import NotComputableError, StructuralError
from sullivan_tc.invar import odd_cuplength
from sullivan_tc.model import (
    SullivanModel,
    elliptic_extension,
    formal_dimension,
    quotient_A,
    recognize_extension,
    square_morphism,
    tensor_square,
)
from sullivan_tc.model_file import parse_model
from sullivan_tc.witness import (
    auto_certificates,
    cuplength_certificate,
    detect_split_partition,
    diagonal_certificate,
    fundamental_cocycle,
    odd_difference_identity,
    single_odd_beta,
    single_odd_certificate,
    split_family_certificate,
)


def random_extension_model(rng: random.Random, n: int, extra: int) -> SullivanModel:
    """Squares x_i^2 for every even generator plus ``extra`` random quadratic odds."""
    evens = [(f"x{i}", 2) for i in range(1, n + 1)]
    odds = [(f"u{i}", 3) for i in range(1, n + 1)] + [(f"y{j}", 3) for j in range(1, extra + 1)]
    differentials = {f"u{i}": (lambda g, i=i: g[f"x{i}"] * g[f"x{i}"]) for i in range(1, n + 1)}
    for j in range(1, extra + 1):
        pairs = [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]
        chosen = rng.sample(pairs, rng.randint(1, len(pairs)))
        weights = [QQ(rng.choice([-2, -1, 1, 2])) for _ in chosen]

        def image(g, chosen=chosen, weights=weights):
            total = g["x1"] * 0
            for (a, b), w in zip(chosen, weights, strict=True):
                total = total + g[f"x{a}"] * g[f"x{b}"] * w
            return total

        differentials[f"y{j}"] = image
    return SullivanModel.from_degrees(evens + odds, differentials)


class TestFundamentalCocycle(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)
        cls.model = parse_model(MODELS_DIR / "example1.model")
        cls.extension = recognize_extension(cls.model)

    def test_recognized_example1(self):
        omega = fundamental_cocycle(self.extension)
        self.assertEqual(omega.degree, formal_dimension(self.model))
        self.assertTrue(self.extension.extension.is_cocycle(omega))

    def test_even_sphere(self):
        e = recognize_extension(parse_model(MODELS_DIR / "even_sphere.model"))
        omega = fundamental_cocycle(e)
        self.assertEqual(omega.degree, 2)


class TestDiagonal(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)
        cls.extension = recognize_extension(parse_model(MODELS_DIR / "example1.model"))

    def test_power_and_bound(self):
        certificate = diagonal_certificate(self.extension)
        self.assertEqual(certificate.construction, "omega")
        self.assertEqual(certificate.power, 3)
        self.assertEqual(certificate.adjoined, 0)
        self.assertEqual(certificate.certified_lower_bound, 3)
        self.assertNotEqual(certificate.scalar, 0)

    def test_adjoined_generators_lower_the_bound(self):
        e = elliptic_extension(parse_model(MODELS_DIR / "example1.model"))
        certificate = diagonal_certificate(e)
        self.assertEqual(certificate.power, 5)
        self.assertEqual(certificate.adjoined, 2)
        self.assertEqual(certificate.certified_lower_bound, 3)


class TestSingleOdd(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)
        cls.model = parse_model(MODELS_DIR / "example1.model")
        cls.extension = recognize_extension(cls.model)

    def test_certificate(self):
        certificate = single_odd_certificate(self.extension)
        self.assertEqual(certificate.power, 5)
        self.assertEqual(abs(certificate.scalar), 4)
        self.assertEqual(certificate.certified_lower_bound, 5)
        self.assertEqual([b.label for b in certificate.blocks], ["Omega", "beta"])

    def test_beta_is_a_cocycle(self):
        _, beta = single_odd_beta(self.extension)
        square = tensor_square(self.extension.extension)
        self.assertTrue(square.square.is_cocycle(beta))
        for name in ("x1", "x2"):
            self.assertTrue(square.mu(square.zero_divisor(name)).is_zero)

    def test_requires_a_single_odd(self):
        e = recognize_extension(parse_model(MODELS_DIR / "even_sphere.model"))
        with self.assertRaises(NotComputableError):
            single_odd_certificate(e)

    @pytest.mark.slow
    def test_example2(self):
        e = recognize_extension(parse_model(MODELS_DIR / "example2.model"))
        self.assertEqual((e.n, e.m), (4, 1))
        certificate = single_odd_certificate(e)
        self.assertEqual(certificate.power, 9)
        self.assertEqual(certificate.adjoined, 0)
        self.assertEqual(abs(certificate.scalar), 2**4)
        self.assertEqual(certificate.certified_lower_bound, 9)

    def test_auto_certificates(self):
        found = {c.construction: c for c in auto_certificates(self.model)}
        self.assertIn("omega", found)
        self.assertIn("single-odd", found)
        self.assertNotIn("split-family", found)


class TestOddDifferenceIdentity(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def test_exhaustive_small_cases(self):
        for count in range(1, 5):
            m = SullivanModel.from_degrees([(f"y{k}", 2 * k + 1) for k in range(1, count + 1)])
            square = tensor_square(m)
            names = m.odd_generators
            for size in range(count + 1):
                for subset in combinations(names, size):
                    self.assertTrue(odd_difference_identity(square, subset), subset)

    def test_subset_must_be_contained(self):
        m = SullivanModel.from_degrees([("y1", 3), ("y2", 5)])
        with self.assertRaises(StructuralError):
            odd_difference_identity(tensor_square(m), ["y3"], ["y1", "y2"])


@pytest.mark.slow
class TestCuplengthCertificate(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)
        cls.model = parse_model(MODELS_DIR / "example1.model")
        cls.odd = odd_cuplength(cls.model)

    def test_example1(self):
        certificate = cuplength_certificate(
            self.model, self.odd.basis, self.odd.classes, table=self.odd.table
        )
        self.assertEqual(certificate.power, 7)
        self.assertEqual(certificate.adjoined, 2)
        self.assertEqual(certificate.certified_lower_bound, 5)
        self.assertEqual(abs(certificate.scalar), 4)

    def test_no_classes(self):
        with self.assertRaises(NotComputableError):
            cuplength_certificate(self.model, self.odd.basis, (), table=self.odd.table)


@pytest.mark.slow
class TestSplitFamily(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)
        cls.model = parse_model(MODELS_DIR / "split_family.model")
        cls.extension = elliptic_extension(cls.model)

    def test_partition(self):
        self.assertIsNone(recognize_extension(self.model))
        self.assertEqual(detect_split_partition(self.extension), ("y1", "x2"))

    def test_certificate(self):
        certificate = split_family_certificate(self.extension)
        self.assertEqual(certificate.power, 6)
        self.assertEqual(certificate.adjoined, 2)
        self.assertEqual(certificate.certified_lower_bound, 4)
        self.assertEqual(abs(certificate.scalar), 4)

    def test_bad_partition(self):
        with self.assertRaises(NotComputableError):
            split_family_certificate(self.extension, ("y2", "x2"))

    def test_needs_two_odd_generators(self):
        e = recognize_extension(parse_model(MODELS_DIR / "example1.model"))
        with self.assertRaises(NotComputableError):
            split_family_certificate(e)


@pytest.mark.slow
class TestRandomModels(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        logging.disable(logging.CRITICAL)

    def test_diagonal_on_random_models(self):
        rng = random.Random(2024)
        for trial in range(50):
            n, extra = rng.randint(1, 3), rng.randint(0, 3)
            e = recognize_extension(random_extension_model(rng, n, extra))
            self.assertIsNotNone(e, trial)
            certificate = diagonal_certificate(e)
            omega = certificate.blocks[0].element

            source = tensor_square(e.extension)
            self.assertTrue(source.square.is_cocycle(omega), trial)

            A = quotient_A(e)
            target = tensor_square(A)
            omega_A = target.square.algebra.one
            for name in (*e.basis, *e.y_names):
                omega_A = omega_A * target.zero_divisor(name)
            phi2 = square_morphism(A.phi, source, target)
            self.assertEqual(phi2(omega), omega_A * (-1) ** n, trial)

            self.assertEqual(certificate.power, n + extra, trial)
            self.assertNotEqual(certificate.scalar, 0, trial)

    def test_single_odd_on_random_models(self):
        rng = random.Random(54)
        for n in (1, 2, 2, 3):
            e = recognize_extension(random_extension_model(rng, n, 1))
            _, beta = single_odd_beta(e)
            square = tensor_square(e.extension)
            self.assertTrue(square.square.is_cocycle(beta))
            certificate = single_odd_certificate(e)
            self.assertEqual(abs(certificate.scalar), 2**n)
            self.assertEqual(certificate.power, 2 * n + 1)


if __name__ == "__main__":
    unittest.main()
