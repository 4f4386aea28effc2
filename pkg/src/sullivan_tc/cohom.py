# src/sullivan_tc/cohom.py
"""
Cohomology of cochain algebras by exact elimination over the rationals.

Tables are filled lazily, one degree at a time, so that asking for the top
degree of a large algebra such as A ⊗ A' only eliminates the pieces that are
actually needed. A degree may be split into blocks by a grading function
(the (p, q) bigrading of the quotient algebra), and each block is solved
independently.
"""

__all__ = [
    "CohomologyClass",
    "CohomologyTable",
    "bigraded_cohomology",
    "cohomology",
    "cup",
    "fundamental_class",
    "poincare_dual",
    "poincare_polynomial",
    "quasi_isomorphism_ranks",
    "solve_coboundary",
]

from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass
from logging import getLogger
from typing import Any

from sympy import QQ

from ._linalg import SparseVector, independent_vectors, nullspace, pivot_inverse, rank, solve
from .errors import NotComputableError, StructuralError
from .gca import Element, GradedAlgebra, Monomial
from .model import (
    CochainAlgebra,
    EllipticExtension,
    QuotientAlgebra,
    SullivanModel,
    formal_dimension,
    quotient_A,
)

logger = getLogger(__name__)

Grading = Callable[[Monomial], Hashable]


@dataclass(frozen=True)
class CohomologyClass:
    """Coordinates of a class against a table's basis in one degree."""

    degree: int
    coordinates: tuple[Any, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def __bool__(self) -> bool:
        return not self.is_zero

    def scaled(self, factor: Any) -> "CohomologyClass":
        return CohomologyClass(self.degree, tuple(c * factor for c in self.coordinates))

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if other.degree != self.degree:
            raise StructuralError("Cannot add classes of different degrees")
        return CohomologyClass(
            self.degree,
            tuple(a + b for a, b in zip(self.coordinates, other.coordinates, strict=True)),
        )


@dataclass
class _Block:
    key: Hashable
    index: dict[Monomial, int]
    boundary_rank: int
    representatives: list[Element]
    pivots: list[int]
    inverse_rows: list[SparseVector]

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def coordinates(self, terms: dict[Monomial, Any]) -> list[Any]:
        vector = {}
        for monomial, value in terms.items():
            position = self.index.get(monomial)
            if position is None:
                raise StructuralError(f"Monomial {monomial} outside block {self.key}")
            vector[position] = value
        values = [vector.get(column, QQ.zero) for column in self.pivots]
        result = []
        for i in range(self.boundary_rank, self.boundary_rank + self.dimension):
            total = QQ.zero
            for q, value in enumerate(values):
                if value:
                    total += value * self.inverse_rows[q].get(i, QQ.zero)
            result.append(total)
        return result


@dataclass
class _Degree:
    degree: int
    blocks: list[_Block]

    @property
    def dimension(self) -> int:
        return sum(block.dimension for block in self.blocks)


class CohomologyTable:
    """
    Degreewise cohomology of a cochain algebra up to ``max_degree``.

    Parameters
    ----------
    source : CochainAlgebra
        The complex; its graded pieces must be finite dimensional.
    max_degree : int
        Truncation degree; requests above it are refused unless
        ``vanishes_above`` is set, in which case they are zero.
    grading : Callable[[Monomial], Hashable], optional
        Splits each degree into blocks preserved by the differential.
    vanishes_above : bool
        Whether cohomology is known to vanish above ``max_degree``.
    """

    def __init__(
        self,
        source: CochainAlgebra,
        max_degree: int,
        *,
        grading: Grading | None = None,
        vanishes_above: bool = False,
    ):
        self.source = source
        self.max_degree = max_degree
        self.grading = grading
        self.vanishes_above = vanishes_above
        self._degrees: dict[int, _Degree] = {}

    @property
    def algebra(self) -> GradedAlgebra:
        return self.source.algebra

    @property
    def is_bigraded(self) -> bool:
        return self.grading is not None

    def _key(self, monomial: Monomial) -> Hashable:
        return self.grading(monomial) if self.grading else None

    def _in_range(self, degree: int) -> bool:
        if degree < 0:
            return False
        if degree > self.max_degree:
            if self.vanishes_above:
                return False
            raise NotComputableError(
                f"Degree {degree} exceeds the truncation degree {self.max_degree}"
            )
        return True

    # ------------------------------------------------------------ elimination
    def _solve(self, degree: int) -> _Degree:
        cached = self._degrees.get(degree)
        if cached is not None:
            return cached

        derivation = self.source.derivation
        monomials = self.algebra.monomials_of_degree(degree)
        grouped: dict[Hashable, list[Monomial]] = {}
        for monomial in monomials:
            grouped.setdefault(self._key(monomial), []).append(monomial)

        boundaries: dict[Hashable, list[dict[Monomial, Any]]] = {}
        for monomial in self.algebra.monomials_of_degree(degree - 1):
            image = derivation.on_monomial(monomial)
            if not image:
                continue
            keys = {self._key(term) for term in image}
            if len(keys) != 1:
                raise StructuralError(
                    f"d({self.algebra.format_monomial(monomial)}) is not homogeneous "
                    "for the grading"
                )
            boundaries.setdefault(keys.pop(), []).append(image)

        blocks = []
        for key, members in grouped.items():
            blocks.append(self._solve_block(key, members, boundaries.get(key, [])))
        solved = _Degree(degree, blocks)
        self._degrees[degree] = solved
        logger.debug(
            f"H^{degree}({self.source.name or 'complex'}): dim {solved.dimension} "
            f"from {len(monomials)} cochains"
        )
        return solved

    def _solve_block(
        self,
        key: Hashable,
        monomials: Sequence[Monomial],
        boundary_images: Sequence[dict[Monomial, Any]],
    ) -> _Block:
        derivation = self.source.derivation
        index = {monomial: i for i, monomial in enumerate(monomials)}
        size = len(monomials)

        targets: dict[Monomial, int] = {}
        columns = []
        for monomial in monomials:
            image = derivation.on_monomial(monomial)
            column = {}
            for term, value in image.items():
                column[targets.setdefault(term, len(targets))] = value
            columns.append(column)
        if self.grading:
            target_keys = {self._key(term) for term in targets}
            if len(target_keys) > 1:
                raise StructuralError(f"Differential is not homogeneous on block {key}")
        cocycles = nullspace(columns, len(targets))

        boundary_vectors = [{index[t]: v for t, v in image.items()} for image in boundary_images]
        stacked = boundary_vectors + cocycles
        chosen = independent_vectors(stacked, size)
        boundary_rank = sum(1 for p in chosen if p < len(boundary_vectors))
        representatives = []
        for p in chosen:
            if p >= len(boundary_vectors):
                vector = stacked[p]
                representatives.append(
                    Element._raw(self.algebra, {monomials[i]: v for i, v in vector.items()})
                )
        pivots, inverse_rows = pivot_inverse([stacked[p] for p in chosen], size)
        return _Block(key, index, boundary_rank, representatives, pivots, inverse_rows)

    # ---------------------------------------------------------------- queries
    def dimension(self, degree: int) -> int:
        if not self._in_range(degree):
            return 0
        return self._solve(degree).dimension

    def dimensions(self) -> dict[int, int]:
        return {n: self.dimension(n) for n in range(self.max_degree + 1)}

    @property
    def total_dimension(self) -> int:
        return sum(self.dimensions().values())

    def basis(self, degree: int) -> list[CohomologyClass]:
        size = self.dimension(degree)
        return [
            CohomologyClass(degree, tuple(QQ.one if i == j else QQ.zero for j in range(size)))
            for i in range(size)
        ]

    def zero(self, degree: int) -> CohomologyClass:
        return CohomologyClass(degree, (QQ.zero,) * self.dimension(degree))

    def representatives(self, degree: int) -> list[Element]:
        if not self._in_range(degree):
            return []
        return [r for block in self._solve(degree).blocks for r in block.representatives]

    def representative(self, cls: CohomologyClass) -> Element:
        result = self.algebra.zero
        for coefficient, rep in zip(
            cls.coordinates, self.representatives(cls.degree), strict=True
        ):
            if coefficient:
                result = result + rep * coefficient
        return result

    def class_of(
        self, element: Element, degree: int | None = None, *, check: bool = True
    ) -> CohomologyClass:
        """
        Class of a homogeneous cocycle.

        Raises
        ------
        StructuralError
            If the element is not a homogeneous cocycle.
        """
        if element.is_zero:
            if degree is None:
                raise StructuralError("The degree of a zero element must be given")
            return self.zero(degree)
        degree = element.degree if degree is None else degree
        if element.degree != degree:
            raise StructuralError(f"{element} is not of degree {degree}")
        if check and not self.source.is_cocycle(element):
            raise StructuralError(f"{element} is not a cocycle")
        if not self._in_range(degree):
            return CohomologyClass(degree, ())

        solved = self._solve(degree)
        pieces: dict[Hashable, dict[Monomial, Any]] = {}
        for monomial, value in element.terms.items():
            pieces.setdefault(self._key(monomial), {})[monomial] = value
        coordinates: list[Any] = []
        for block in solved.blocks:
            terms = pieces.pop(block.key, None)
            if terms is None:
                coordinates.extend([QQ.zero] * block.dimension)
            else:
                coordinates.extend(block.coordinates(terms))
        if pieces:
            raise StructuralError(f"{element} has terms outside degree {degree}")
        return CohomologyClass(degree, tuple(coordinates))

    def is_coboundary(self, element: Element, degree: int | None = None) -> bool:
        return self.class_of(element, degree).is_zero

    def cup(self, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
        degree = a.degree + b.degree
        if not self._in_range(degree):
            return CohomologyClass(degree, ())
        product = self.representative(a) * self.representative(b)
        return self.class_of(product, degree, check=False)

    # --------------------------------------------------------------- bigrading
    def bidegree(self, cls: CohomologyClass) -> Hashable | None:
        """Block key carrying ``cls``, or None if it spans several blocks."""
        if not self._in_range(cls.degree):
            return None
        keys = set()
        offset = 0
        for block in self._solve(cls.degree).blocks:
            chunk = cls.coordinates[offset : offset + block.dimension]
            if any(chunk):
                keys.add(block.key)
            offset += block.dimension
        return keys.pop() if len(keys) == 1 else None

    def block_classes(self, predicate: Callable[[Hashable], bool]) -> list[CohomologyClass]:
        """Basis classes, over all degrees, whose block key satisfies ``predicate``."""
        selected = []
        for degree in range(self.max_degree + 1):
            solved = self._solve(degree)
            size = solved.dimension
            offset = 0
            for block in solved.blocks:
                if predicate(block.key):
                    for i in range(block.dimension):
                        coordinates = [QQ.zero] * size
                        coordinates[offset + i] = QQ.one
                        selected.append(CohomologyClass(degree, tuple(coordinates)))
                offset += block.dimension
        return selected

    def classes_of_bidegree(self, p: int, q: int) -> list[CohomologyClass]:
        return self.block_classes(lambda key: key == (p, q))

    def odd_classes(self) -> list[CohomologyClass]:
        """Basis of H_{odd,*}: classes of odd word-length in the x's."""
        if not self.is_bigraded:
            raise StructuralError("H_{odd,*} needs a bigraded table")
        return self.block_classes(lambda key: key[0] % 2 == 1)


def cohomology(c: CochainAlgebra, max_degree: int | None = None) -> CohomologyTable:
    """
    Cohomology table of ``c`` up to ``max_degree``.

    Finite-dimensional algebras default to their top degree. Sullivan models
    must be verified elliptic and are truncated at their formal dimension;
    larger truncation degrees are refused.
    """
    if c.algebra.is_finite_dimensional:
        top = c.algebra.top_degree
        max_degree = top if max_degree is None else max_degree
        return CohomologyTable(c, max_degree, vanishes_above=max_degree >= top)
    if isinstance(c, SullivanModel):
        top = formal_dimension(c)
        max_degree = top if max_degree is None else max_degree
        if max_degree > top:
            raise NotComputableError(
                f"Cohomology of {c!r} requested up to {max_degree}, beyond its formal "
                f"dimension {top}"
            )
        return CohomologyTable(c, max_degree, vanishes_above=max_degree >= top)
    raise NotComputableError(f"{c!r} is infinite dimensional and not a Sullivan model")


def bigraded_cohomology(A: QuotientAlgebra) -> CohomologyTable:
    """H(A) split by (x word-length, y word-length)."""
    return CohomologyTable(
        A, A.top_degree, grading=A.bidegree, vanishes_above=True
    )


def cup(table: CohomologyTable, c1: CohomologyClass, c2: CohomologyClass) -> CohomologyClass:
    return table.cup(c1, c2)


def fundamental_class(A: QuotientAlgebra, table: CohomologyTable | None = None) -> CohomologyClass:
    """
    The top class [x_[n]·y_[m]].

    Raises
    ------
    StructuralError
        If the top cohomology is not one dimensional.
    """
    table = table or cohomology(A)
    top = A.top_degree
    if table.dimension(top) != 1:
        raise StructuralError(
            f"Top cohomology of {A!r} has dimension {table.dimension(top)}, expected 1"
        )
    cls = table.class_of(A.top_element)
    if cls.is_zero:
        raise StructuralError("x_[n]·y_[m] is a coboundary")
    return cls


def poincare_dual(table: CohomologyTable, z: CohomologyClass) -> CohomologyClass:
    """
    A class ẑ with [z]·[ẑ] = [ω_A], found over the basis of H^{D_A − |z|}.
    """
    A = table.source
    if not isinstance(A, QuotientAlgebra):
        raise StructuralError("Poincaré duality is solved in a quotient algebra")
    if z.is_zero:
        raise StructuralError("The zero class has no Poincaré dual")
    top = fundamental_class(A, table)
    for candidate in table.basis(A.top_degree - z.degree):
        pairing = table.cup(z, candidate)
        if pairing.is_zero:
            continue
        dual = candidate.scaled(top.coordinates[0] / pairing.coordinates[0])
        if table.cup(z, dual) != top:
            raise StructuralError("Poincaré dual failed to pair back to [ω_A]")
        return dual
    raise StructuralError(f"No Poincaré dual for a class of degree {z.degree}")


def poincare_polynomial(table: CohomologyTable) -> dict[int, int]:
    """Non-zero Betti numbers by degree."""
    return {n: b for n, b in table.dimensions().items() if b}


def solve_coboundary(
    c: CochainAlgebra, target: Element, monomials: Iterable[Monomial]
) -> Element | None:
    """
    A cochain x in the span of ``monomials`` with d x = ``target``.

    The reduced-echelon particular solution is returned (free coefficients set
    to zero), or None when no such cochain exists.
    """
    monomials = list(monomials)
    rows: dict[Monomial, int] = {}
    columns = []
    for monomial in monomials:
        image = c.derivation.on_monomial(monomial)
        columns.append({rows.setdefault(t, len(rows)): v for t, v in image.items()})
    goal = {rows.setdefault(t, len(rows)): v for t, v in target.terms.items()}
    solution = solve(columns, goal, len(rows))
    if solution is None:
        return None
    return Element._raw(c.algebra, {monomials[j]: v for j, v in solution.items()})


def quasi_isomorphism_ranks(
    e: EllipticExtension, A: QuotientAlgebra | None = None
) -> dict[int, tuple[int, int, int]]:
    """
    Compare H(ΛW) and H(A) degreewise up to D_A.

    Returns
    -------
    dict[int, tuple[int, int, int]]
        ``degree -> (dim H(ΛW), dim H(A), rank of H(φ) on the ΛW basis)``.
    """
    A = A or quotient_A(e)
    top = A.top_degree
    extension_table = cohomology(e.extension, top)
    quotient_table = cohomology(A)
    result = {}
    for degree in range(top + 1):
        images = [
            dict(enumerate(quotient_table.class_of(A.phi(rep), degree).coordinates))
            for rep in extension_table.representatives(degree)
        ]
        result[degree] = (
            extension_table.dimension(degree),
            quotient_table.dimension(degree),
            rank(images, quotient_table.dimension(degree)),
        )
        logger.debug(f"Degree {degree}: H(ΛW), H(A), rank H(φ) = {result[degree]}")
    return result
