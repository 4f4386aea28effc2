# src/sullivan_tc/invar.py
"""
Cuplength-type invariants, LS-category of pure models and the aggregation of
lower and upper bounds for rational topological complexity.
"""

__all__ = [
    "Bound",
    "BoundOptions",
    "CategoryResult",
    "FiniteGradedAlgebra",
    "OddCuplength",
    "OddCuplengthSweep",
    "ProductSearch",
    "TCBoundReport",
    "cat_pure",
    "cuplength",
    "odd_cuplength",
    "odd_cuplength_sweep",
    "power_length",
    "tc_bounds",
    "zero_divisor_cuplength",
]

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from logging import getLogger
from typing import Any

from sympy import QQ

from ._linalg import SparseVector, independent_vectors
from .cohom import CohomologyClass, CohomologyTable, bigraded_cohomology, cohomology
from .config import DEFAULTS
from .errors import NotComputableError, StructuralError
from .model import (
    EllipticExtension,
    Ellipticity,
    QuotientAlgebra,
    SullivanModel,
    change_of_basis,
    chi_pi,
    elliptic_extension,
    free_odd_split,
    is_elliptic,
    quotient_A,
    recognize_extension,
    submodel,
    validate,
)
from .witness import WitnessCertificate, auto_certificates, cuplength_certificate

logger = getLogger(__name__)


class FiniteGradedAlgebra:
    """
    Structure constants of a finite-dimensional graded-commutative algebra.

    Parameters
    ----------
    degrees : Sequence[int]
        Degree of each basis element.
    structure : Callable[[int, int], SparseVector]
        Product of two basis elements as a sparse vector; memoised here.
    unit : int, optional
        Index of the unit, required for zero divisors.
    """

    def __init__(
        self,
        degrees: Sequence[int],
        structure: Callable[[int, int], SparseVector],
        unit: int | None = None,
        classes: Sequence[CohomologyClass] | None = None,
    ):
        self.degrees = tuple(degrees)
        self._structure = structure
        self._products: dict[tuple[int, int], SparseVector] = {}
        self.unit = unit
        self.classes = tuple(classes) if classes is not None else None

    @classmethod
    def from_table(cls, table: CohomologyTable) -> "FiniteGradedAlgebra":
        """Algebra on the basis classes of every degree of ``table``."""
        classes: list[CohomologyClass] = []
        offsets: dict[int, int] = {}
        for degree in range(table.max_degree + 1):
            offsets[degree] = len(classes)
            classes.extend(table.basis(degree))

        def structure(i: int, j: int) -> SparseVector:
            product = table.cup(classes[i], classes[j])
            start = offsets.get(product.degree, 0)
            return {start + k: c for k, c in enumerate(product.coordinates) if c}

        unit = offsets[0] if table.dimension(0) == 1 else None
        return cls([c.degree for c in classes], structure, unit, classes)

    @property
    def dimension(self) -> int:
        return len(self.degrees)

    @property
    def top_degree(self) -> int:
        return max(self.degrees, default=0)

    def product(self, i: int, j: int) -> SparseVector:
        key = (i, j)
        cached = self._products.get(key)
        if cached is None:
            cached = self._structure(i, j)
            self._products[key] = cached
        return cached

    def multiply(self, left: SparseVector, right: SparseVector) -> SparseVector:
        result: SparseVector = {}
        for i, a in left.items():
            for j, b in right.items():
                for k, c in self.product(i, j).items():
                    total = result.get(k, QQ.zero) + a * b * c
                    if total:
                        result[k] = total
                    else:
                        result.pop(k, None)
        return result

    def basis_vector(self, i: int) -> SparseVector:
        return {i: QQ.one}

    def positive_basis(self) -> list[SparseVector]:
        return [self.basis_vector(i) for i, d in enumerate(self.degrees) if d > 0]

    def tensor_square(self) -> "FiniteGradedAlgebra":
        """H ⊗ H with (a⊗b)(c⊗d) = (−1)^{|b||c|} ac ⊗ bd; index of a⊗b is a·N + b."""
        size = self.dimension

        def structure(p: int, q: int) -> SparseVector:
            a, b = divmod(p, size)
            c, d = divmod(q, size)
            sign = -1 if self.degrees[b] * self.degrees[c] % 2 else 1
            result: SparseVector = {}
            for k, left in self.product(a, c).items():
                for l, right in self.product(b, d).items():
                    result[k * size + l] = sign * left * right
            return result

        degrees = [self.degrees[a] + self.degrees[b] for a in range(size) for b in range(size)]
        unit = None if self.unit is None else self.unit * size + self.unit
        return FiniteGradedAlgebra(degrees, structure, unit)

    def zero_divisors(self) -> list[SparseVector]:
        """a ⊗ 1 − 1 ⊗ a for every positive-degree basis element a."""
        if self.unit is None:
            raise StructuralError("Zero divisors need a connected algebra")
        size = self.dimension
        return [
            {i * size + self.unit: QQ.one, self.unit * size + i: -QQ.one}
            for i, d in enumerate(self.degrees)
            if d > 0
        ]


@dataclass(frozen=True)
class ProductSearch:
    length: int
    witness: tuple[int, ...] = ()


def power_length(
    algebra: FiniteGradedAlgebra, generators: Sequence[SparseVector]
) -> ProductSearch:
    """
    Largest r with S^r ≠ 0, S the span of ``generators`` (all of positive degree).

    S^{r+1} is spanned by a basis of S^r times the generators, so each level is
    reduced to an independent family before multiplying again. The witness
    lists generator indices of one non-zero product of maximal length.
    """
    size = algebra.dimension
    chosen = independent_vectors(generators, size)
    if not chosen:
        return ProductSearch(0)
    level = [(generators[i], (i,)) for i in chosen]
    length = 1
    while True:
        candidates = []
        for vector, provenance in level:
            for g in chosen:
                product = algebra.multiply(vector, generators[g])
                if product:
                    candidates.append((product, (*provenance, g)))
        if not candidates:
            break
        keep = independent_vectors([c[0] for c in candidates], size)
        level = [candidates[i] for i in keep]
        length += 1
        logger.debug(f"Product level {length}: {len(level)} independent products")
        if length > algebra.top_degree:
            raise StructuralError("Products of positive-degree elements do not terminate")
    return ProductSearch(length, level[0][1])


def cuplength(table: CohomologyTable) -> int:
    """Longest non-zero product of positive-degree classes."""
    algebra = FiniteGradedAlgebra.from_table(table)
    return power_length(algebra, algebra.positive_basis()).length


def zero_divisor_cuplength(m: SullivanModel) -> int:
    """Longest non-zero product of zero divisors in H(ΛV) ⊗ H(ΛV)."""
    algebra = FiniteGradedAlgebra.from_table(cohomology(m))
    result = power_length(algebra.tensor_square(), algebra.zero_divisors())
    logger.debug(f"zcl({m.name or 'model'}) = {result.length}")
    return result.length


# --------------------------------------------------------------- odd cuplength
@dataclass
class OddCuplength:
    value: int
    classes: tuple[CohomologyClass, ...]
    table: CohomologyTable | None
    quotient: QuotientAlgebra | None
    extension: EllipticExtension | None
    basis: tuple[str, ...] = ()


def odd_cuplength(m: SullivanModel, basis: Sequence[str] | None = None) -> OddCuplength:
    """
    Longest non-zero product of classes of odd x-word-length in H(A).

    Parameters
    ----------
    m : SullivanModel
        Pure coformal model.
    basis : Sequence[str], optional
        Ordering of the even generators used to build ΛW and A.

    Raises
    ------
    NotComputableError
        If ``m`` is not coformal.
    """
    if not m.is_pure:
        raise StructuralError(f"{m!r} is not pure")
    if not m.is_coformal:
        raise NotComputableError("The odd cuplength is defined for coformal models")
    if not m.even_generators:
        return OddCuplength(0, (), None, None, None)

    e = elliptic_extension(m, basis)
    A = quotient_A(e)
    table = bigraded_cohomology(A)
    algebra = FiniteGradedAlgebra.from_table(table)
    odd = table.odd_classes()
    lookup = {cls: i for i, cls in enumerate(algebra.classes or ())}
    generators = [algebra.basis_vector(lookup[cls]) for cls in odd]
    search = power_length(algebra, generators)
    classes = tuple(odd[i] for i in search.witness)
    logger.info(f"L({m.name or 'model'}, {list(e.basis)}) = {search.length}")
    return OddCuplength(search.length, classes, table, A, e, e.basis)


@dataclass
class OddCuplengthSweep:
    values: dict[str, int]
    best: OddCuplength | None

    @property
    def value(self) -> int:
        return max(self.values.values(), default=0)


def _basis_label(basis: Sequence[str] | None) -> str:
    return "declared" if basis is None else ",".join(basis)


def odd_cuplength_sweep(
    m: SullivanModel,
    bases: Sequence[Sequence[str] | None] = (None,),
    transforms: Sequence[Sequence[Sequence[Any]]] = (),
) -> OddCuplengthSweep:
    """
    Odd cuplength over several bases, as a lower estimate of its maximum.

    ``bases`` are orderings of the even generators; each matrix in
    ``transforms`` is applied with :func:`change_of_basis` first.
    """
    values: dict[str, int] = {}
    best: OddCuplength | None = None
    runs: list[tuple[str, SullivanModel, Sequence[str] | None]] = [
        (_basis_label(b), m, b) for b in (bases or (None,))
    ]
    for k, matrix in enumerate(transforms, start=1):
        runs.append((f"transform{k}", change_of_basis(m, matrix), None))
    for label, model, basis in runs:
        result = odd_cuplength(model, basis)
        values[label] = result.value
        if best is None or result.value > best.value:
            best = result
    return OddCuplengthSweep(values, best)


# ------------------------------------------------------------------ category
@dataclass(frozen=True)
class CategoryResult:
    value: int
    method: str


def cat_pure(m: SullivanModel) -> CategoryResult:
    """
    LS-category of a pure elliptic model from its shape.

    Coformal models have cat = dim V^odd; word-homogeneous differentials of
    length k give n(k − 2) + m.
    """
    if not m.is_pure:
        raise NotComputableError(f"{m!r} is not pure")
    if is_elliptic(m) is not Ellipticity.YES:
        raise NotComputableError("The category formulas need an elliptic model")
    n, odd = len(m.even_generators), len(m.odd_generators)
    if m.is_coformal:
        return CategoryResult(odd, "coformal")
    if m.word_length is not None:
        return CategoryResult(n * (m.word_length - 2) + odd, "homogeneous")
    raise NotComputableError("No category formula applies to a mixed word-length model")


# -------------------------------------------------------------------- bounds
@dataclass(frozen=True)
class Bound:
    value: int
    source: str
    detail: str = ""
    certificate: WitnessCertificate | None = field(default=None, compare=False)


@dataclass(frozen=True)
class BoundOptions:
    bases: tuple[tuple[str, ...] | None, ...] = (None,)
    transforms: tuple[Any, ...] = ()
    assume_formal: bool = False
    with_witnesses: bool = True
    subset_cap: int | None = None
    window_limit: int | None = None


@dataclass
class TCBoundReport:
    lower: list[Bound] = field(default_factory=list)
    upper: list[Bound] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def lower_value(self) -> int:
        return max((b.value for b in self.lower), default=0)

    @property
    def upper_value(self) -> int | None:
        return min((b.value for b in self.upper), default=None)

    @property
    def interval(self) -> tuple[int, int | None]:
        return self.lower_value, self.upper_value

    @property
    def exact(self) -> bool:
        return self.upper_value is not None and self.lower_value == self.upper_value

    @property
    def consistent(self) -> bool:
        return self.upper_value is None or self.lower_value <= self.upper_value


def _category(m: SullivanModel) -> int:
    """cat via the shape formulas, else the cuplength of a formal model."""
    try:
        return cat_pure(m).value
    except NotComputableError:
        return cuplength(cohomology(m))


def _f0_submodels(
    m: SullivanModel, cap: int, window_limit: int | None
) -> Iterator[tuple[tuple[str, ...], SullivanModel]]:
    """Elliptic Λ(X ⊕ S) with S a set of dim X odd generators."""
    evens = m.even_generators
    odds = m.odd_generators
    if len(odds) > cap:
        raise NotComputableError(
            f"{len(odds)} odd generators exceed the F0 subset cap {cap}"
        )
    for subset in combinations(odds, len(evens)):
        sub = submodel(m, (*evens, *subset))
        if is_elliptic(sub, window_limit) is Ellipticity.YES:
            logger.debug(f"F0 sub-model on {list(subset)}")
            yield subset, sub


def tc_bounds(m: SullivanModel, options: BoundOptions | None = None) -> TCBoundReport:
    """
    Lower and upper bounds for TC(ΛV) of a pure elliptic model.

    Raises
    ------
    NotComputableError
        If the model is not pure or not verified elliptic.
    """
    options = options or BoundOptions()
    validate(m)
    if not m.is_pure:
        raise NotComputableError(f"{m!r} is not pure")
    verdict = is_elliptic(m, options.window_limit)
    if verdict is not Ellipticity.YES:
        raise NotComputableError(f"TC bounds need an elliptic model; ellipticity is {verdict.value}")

    report = TCBoundReport()
    chi = chi_pi(m)
    odd_count = len(m.odd_generators)

    # lower bounds
    try:
        report.lower.append(Bound(zero_divisor_cuplength(m), "zero_divisor_cuplength"))
    except NotComputableError as exc:
        report.notes.append(f"zero_divisor_cuplength: {exc}")

    category: int | None
    try:
        result = cat_pure(m)
        category = result.value
        report.lower.append(Bound(category, "category", result.method))
    except NotComputableError as exc:
        category = None
        report.notes.append(f"category: {exc}")

    sweep: OddCuplengthSweep | None = None
    if m.is_coformal:
        sweep = odd_cuplength_sweep(m, options.bases, options.transforms)
        detail = " ".join(f"{k}:{v}" for k, v in sweep.values.items())
        report.lower.append(Bound(odd_count + sweep.value, "odd_cuplength", detail))
    else:
        report.notes.append("odd_cuplength: model is not coformal")

    if options.with_witnesses:
        for certificate in auto_certificates(m):
            report.lower.append(
                Bound(
                    certificate.certified_lower_bound,
                    f"certificate:{certificate.construction}",
                    f"power {certificate.power}, scalar {certificate.scalar}",
                    certificate,
                )
            )
        best = sweep.best if sweep else None
        if best is not None and best.value and odd_count + best.value > report.lower_value:
            certificate = cuplength_certificate(
                best.extension.base, best.basis, best.classes, table=best.table
            )
            report.lower.append(
                Bound(
                    certificate.certified_lower_bound,
                    "certificate:cuplength",
                    f"power {certificate.power}, scalar {certificate.scalar}",
                    certificate,
                )
            )

    # upper bounds
    cap = options.subset_cap or DEFAULTS["f0_subset_cap"]
    f0_found = False
    try:
        best_f0: Bound | None = None
        for subset, sub in _f0_submodels(m, cap, options.window_limit):
            f0_found = True
            value = 2 * _category(sub) - chi
            if best_f0 is None or value < best_f0.value:
                best_f0 = Bound(value, "f0_submodel", ",".join(subset))
        if best_f0 is not None:
            report.upper.append(best_f0)
    except NotComputableError as exc:
        report.notes.append(f"f0_submodel: {exc}")

    homogeneous = m.word_length is not None or not any(m.differential.values())
    if category is not None and homogeneous and f0_found:
        report.upper.append(Bound(2 * category + chi, "homogeneous_category"))

    recognized = recognize_extension(m)
    if recognized is not None:
        report.upper.append(Bound(recognized.dimension, "extension_dimension"))

    if category is not None:
        report.upper.append(Bound(2 * category, "twice_category"))

    # equality for formal products
    free, rest = free_odd_split(m)
    factored = submodel(m, rest)
    if category is not None and (
        options.assume_formal
        or (chi_pi(factored) == 0 and is_elliptic(factored) is Ellipticity.YES)
    ):
        reason = "assumed formal" if options.assume_formal else f"free odd {list(free)}"
        exact = Bound(2 * category + chi, "formal_product", reason)
        report.lower.append(exact)
        report.upper.append(exact)

    logger.info(f"TC({m.name or 'model'}) in {list(report.interval)}")
    if not report.consistent:
        report.notes.append("lower bound exceeds upper bound")
        logger.error(f"Inconsistent bounds for {m!r}: {report.interval}")
    return report
