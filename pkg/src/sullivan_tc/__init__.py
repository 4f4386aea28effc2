# src/sullivan_tc/__init__.py
"""Rational topological complexity of pure Sullivan models."""
from .cohom import (
    CohomologyClass,
    CohomologyTable,
    bigraded_cohomology,
    cohomology,
    cup,
    fundamental_class,
    poincare_dual,
    quasi_isomorphism_ranks,
)
from .config import setup_logging
from .errors import (
    ConstructionError,
    InvalidModelError,
    ModelFileError,
    NotComputableError,
    StructuralError,
    SullivanError,
)
from .gca import Element, Generator, GradedAlgebra, apply_derivation, multiply
from .invar import (
    BoundOptions,
    TCBoundReport,
    cat_pure,
    cuplength,
    odd_cuplength,
    odd_cuplength_sweep,
    tc_bounds,
    zero_divisor_cuplength,
)
from .model import (
    EllipticExtension,
    Ellipticity,
    QuotientAlgebra,
    SullivanModel,
    change_of_basis,
    chi_pi,
    elliptic_extension,
    is_elliptic,
    quotient_A,
    recognize_extension,
    tensor_square,
    validate,
)
from .model_file import ModelFile, format_model, load_model_file, parse_model, parse_text
from .witness import (
    WitnessCertificate,
    cuplength_certificate,
    diagonal_certificate,
    fundamental_cocycle,
    odd_difference_identity,
    single_odd_beta,
    single_odd_certificate,
    split_family_certificate,
)

__all__ = [
    "BoundOptions",
    "CohomologyClass",
    "CohomologyTable",
    "ConstructionError",
    "Element",
    "EllipticExtension",
    "Ellipticity",
    "Generator",
    "GradedAlgebra",
    "InvalidModelError",
    "ModelFile",
    "ModelFileError",
    "NotComputableError",
    "QuotientAlgebra",
    "StructuralError",
    "SullivanError",
    "SullivanModel",
    "TCBoundReport",
    "WitnessCertificate",
    "apply_derivation",
    "bigraded_cohomology",
    "cat_pure",
    "change_of_basis",
    "chi_pi",
    "cohomology",
    "cup",
    "cuplength",
    "cuplength_certificate",
    "diagonal_certificate",
    "elliptic_extension",
    "format_model",
    "fundamental_class",
    "fundamental_cocycle",
    "is_elliptic",
    "load_model_file",
    "multiply",
    "odd_cuplength",
    "odd_cuplength_sweep",
    "odd_difference_identity",
    "parse_model",
    "parse_text",
    "poincare_dual",
    "quasi_isomorphism_ranks",
    "quotient_A",
    "recognize_extension",
    "setup_logging",
    "single_odd_beta",
    "single_odd_certificate",
    "split_family_certificate",
    "tc_bounds",
    "tensor_square",
    "validate",
    "zero_divisor_cuplength",
]
