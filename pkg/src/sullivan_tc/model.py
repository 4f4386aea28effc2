# src/sullivan_tc/model.py
"""
Pure Sullivan models and the structural constructions built on them: the
elliptic extension ΛW obtained by killing the squares of the even generators,
the finite-dimensional quotient A = Λ(x)/(x²) ⊗ ΛY with its surjection φ, and
tensor squares carrying the multiplication map μ.
"""

__all__ = [
    "CochainAlgebra",
    "Ellipticity",
    "EllipticExtension",
    "QuotientAlgebra",
    "SullivanModel",
    "TensorSquare",
    "ValidationReport",
    "change_of_basis",
    "chi_pi",
    "elliptic_extension",
    "formal_dimension",
    "free_odd_split",
    "is_elliptic",
    "quotient_A",
    "recognize_extension",
    "square_morphism",
    "sub_extension",
    "submodel",
    "tensor_square",
    "validate",
]

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from logging import getLogger
from typing import Any

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from ._linalg import rank
from .config import DEFAULTS
from .errors import InvalidModelError, NotComputableError, StructuralError
from .gca import (
    AlgebraMorphism,
    Derivation,
    Element,
    Generator,
    GradedAlgebra,
    to_rational,
)

logger = getLogger(__name__)


class Ellipticity(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class CochainAlgebra:
    """A graded algebra together with a degree +1 derivation."""

    def __init__(
        self,
        algebra: GradedAlgebra,
        differential: Mapping[str, Element],
        name: str = "",
    ):
        self.algebra = algebra
        self.derivation = Derivation(algebra, differential)
        self.name = name

    @property
    def differential(self) -> dict[str, Element]:
        return self.derivation.images

    def d(self, element: Element) -> Element:
        return self.derivation(element)

    def is_cocycle(self, element: Element) -> bool:
        return self.derivation(element).is_zero

    @property
    def even_generators(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.algebra.generators if g.is_even)

    @property
    def odd_generators(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.algebra.generators if g.is_odd)

    def degree(self, name: str) -> int:
        return self.algebra.generator_info(name).degree

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"{type(self).__name__}{label}({self.algebra!r})"


class SullivanModel(CochainAlgebra):
    """
    Free graded-commutative cochain algebra (ΛV, d).

    The derived flags follow the usual conventions: pure means dX = 0 and
    dY ⊂ ΛX, coformal means every non-zero differential is quadratic, minimal
    means no differential has a linear part.
    """

    def __init__(
        self,
        algebra: GradedAlgebra,
        differential: Mapping[str, Element],
        name: str = "",
    ):
        if algebra.truncations:
            raise StructuralError("A Sullivan model lives on a free algebra")
        super().__init__(algebra, differential, name)

    @classmethod
    def from_degrees(
        cls,
        degrees: Mapping[str, int] | Sequence[tuple[str, int]],
        differential: Mapping[str, Any] | None = None,
        name: str = "",
    ) -> "SullivanModel":
        """
        Build a model from ``name -> degree`` pairs and a differential given
        either as Elements or as callables receiving the generator elements.
        """
        pairs = degrees.items() if isinstance(degrees, Mapping) else degrees
        algebra = GradedAlgebra(Generator(n, d) for n, d in pairs)
        gens = algebra.generators_as_elements()
        images = {}
        for target, value in (differential or {}).items():
            images[target] = value(gens) if callable(value) else value
        return cls(algebra, images, name)

    @cached_property
    def _nonzero_images(self) -> dict[str, Element]:
        return {n: e for n, e in self.differential.items() if e}

    @cached_property
    def is_pure(self) -> bool:
        for name, image in self._nonzero_images.items():
            if self.algebra.generator_info(name).is_even:
                return False
            if any(self.algebra.odd_count(m) for m in image.terms):
                return False
        return True

    @cached_property
    def is_coformal(self) -> bool:
        return all(e.wordlengths() == {2} for e in self._nonzero_images.values())

    @cached_property
    def is_minimal(self) -> bool:
        return all(min(e.wordlengths()) >= 2 for e in self._nonzero_images.values())

    @cached_property
    def word_length(self) -> int | None:
        """Common word-length k of all non-zero differentials, if there is one."""
        lengths: set[int] = set()
        for image in self._nonzero_images.values():
            lengths |= image.wordlengths()
        return lengths.pop() if len(lengths) == 1 else None


@dataclass(frozen=True)
class ValidationReport:
    pure: bool
    coformal: bool
    minimal: bool
    word_length: int | None
    messages: tuple[str, ...] = ()


def validate(m: SullivanModel) -> ValidationReport:
    """
    Check d² = 0 on every generator and report the structural flags.

    Raises
    ------
    InvalidModelError
        If d(d(g)) ≠ 0 for some generator g.
    """
    for name in m.algebra.names:
        square = m.d(m.derivation.image(name))
        if square:
            raise InvalidModelError(
                f"d(d({name})) = {square} is not zero", generator=name
            )

    messages = []
    if not m.is_pure:
        messages.append("model is not pure")
    if not m.is_minimal:
        messages.append("model is not minimal (linear part in d)")
    if not m.is_coformal:
        messages.append("model is not coformal")
    report = ValidationReport(
        pure=m.is_pure,
        coformal=m.is_coformal,
        minimal=m.is_minimal,
        word_length=m.word_length,
        messages=tuple(messages),
    )
    logger.debug(f"Validated {m!r}: {report}")
    return report


def chi_pi(m: CochainAlgebra) -> int:
    """Homotopy Euler characteristic dim V^even − dim V^odd."""
    return len(m.even_generators) - len(m.odd_generators)


# ----------------------------------------------------------------- extensions
@dataclass(frozen=True)
class EllipticExtension:
    """
    ΛW = Λ(X ⊕ Y ⊕ U) with du_i = x_i² for the ordered basis ``basis`` of X.

    ``adjoined`` is False when ``extension`` is a given model recognised as
    having this shape (its u's are existing generators) rather than built
    by adjoining new ones.
    """

    base: SullivanModel
    basis: tuple[str, ...]
    extension: SullivanModel
    u_names: tuple[str, ...]
    adjoined: bool = True

    @property
    def n(self) -> int:
        return len(self.basis)

    @property
    def y_names(self) -> tuple[str, ...]:
        return self.base.odd_generators

    @property
    def m(self) -> int:
        return len(self.y_names)

    def u_of(self, x: str) -> str:
        return self.u_names[self.basis.index(x)]

    @property
    def dimension(self) -> int:
        """dim W = 2·dim X + dim Y."""
        return 2 * self.n + self.m


def _extension_names(
    m: SullivanModel, basis: Sequence[str], prefix: str
) -> tuple[str, ...]:
    taken = set(m.algebra.names)
    names = []
    for i, x in enumerate(basis, start=1):
        for candidate in (f"{prefix}{i}", f"{prefix}_{x}"):
            if candidate not in taken:
                break
        else:
            raise StructuralError(f"Cannot name the generator killing {x}^2")
        taken.add(candidate)
        names.append(candidate)
    return tuple(names)


def elliptic_extension(
    m: SullivanModel,
    basis: Sequence[str] | None = None,
    *,
    prefix: str | None = None,
) -> EllipticExtension:
    """
    Adjoin odd generators u_i with du_i = x_i² for each x_i in ``basis``.

    Parameters
    ----------
    m : SullivanModel
        A pure model.
    basis : Sequence[str], optional
        Ordering of the even generators; defaults to declaration order. Use
        :func:`change_of_basis` first for a basis other than a permutation of
        the declared even generators.
    prefix : str, optional
        Name prefix for the new generators (``u`` by default).

    Returns
    -------
    EllipticExtension
    """
    if not m.is_pure:
        raise StructuralError(f"{m!r} is not pure")
    evens = m.even_generators
    basis = tuple(evens if basis is None else basis)
    if sorted(basis) != sorted(evens) or len(set(basis)) != len(basis):
        raise StructuralError(
            f"Basis {list(basis)} is not an ordering of the even generators {list(evens)}"
        )
    if not basis:
        return EllipticExtension(m, (), m, (), adjoined=True)

    u_names = _extension_names(m, basis, prefix or DEFAULTS["extension_prefix"])
    new_generators = [
        Generator(u, 2 * m.degree(x) - 1) for u, x in zip(u_names, basis, strict=True)
    ]
    algebra = m.algebra.extended(new_generators)
    images = {
        name: m.algebra.embed(image, algebra) for name, image in m.differential.items()
    }
    for u, x in zip(u_names, basis, strict=True):
        x_element = algebra.generator(x)
        images[u] = x_element * x_element
    extension = SullivanModel(algebra, images, name=f"{m.name}+U" if m.name else "")
    logger.debug(f"Adjoined {list(u_names)} to {m!r} for basis {list(basis)}")
    return EllipticExtension(m, basis, extension, u_names, adjoined=True)


def submodel(m: SullivanModel, names: Iterable[str]) -> SullivanModel:
    """Sub-model generated by ``names``; the set must be closed under d."""
    algebra = m.algebra.restricted(names)
    images = {}
    for name in algebra.names:
        try:
            images[name] = m.algebra.embed(m.derivation.image(name), algebra)
        except StructuralError as exc:
            raise StructuralError(f"Generators {list(algebra.names)} are not d-closed") from exc
    return SullivanModel(algebra, images, name=m.name)


def recognize_extension(m: SullivanModel) -> EllipticExtension | None:
    """
    Detect whether ``m`` already has the shape Λ(X ⊕ Y ⊕ U) with du_i = x_i².

    For each even generator in declaration order the first unused odd
    generator whose differential is exactly x_i² is taken as u_i.
    """
    if not m.is_pure:
        return None
    used: list[str] = []
    for x in m.even_generators:
        x_element = m.algebra.generator(x)
        square = x_element * x_element
        for y in m.odd_generators:
            if y not in used and m.derivation.image(y) == square:
                used.append(y)
                break
        else:
            return None
    base = submodel(m, [g for g in m.algebra.names if g not in used])
    return EllipticExtension(base, m.even_generators, m, tuple(used), adjoined=False)


def sub_extension(
    e: EllipticExtension, x_names: Sequence[str], y_names: Sequence[str]
) -> EllipticExtension:
    """Restriction of ``e`` to Λ(x's, their u's, y's), in the parent's order."""
    x_names = tuple(x for x in e.basis if x in set(x_names))
    keep = set(x_names) | set(y_names) | {e.u_of(x) for x in x_names}
    extension = submodel(e.extension, keep)
    base = submodel(e.extension, set(x_names) | set(y_names))
    return EllipticExtension(
        base,
        x_names,
        extension,
        tuple(e.u_of(x) for x in x_names),
        adjoined=e.adjoined,
    )


def free_odd_split(m: SullivanModel) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Split generators into odd ones with zero differential and the rest."""
    free = tuple(y for y in m.odd_generators if not m.derivation.image(y))
    rest = tuple(g for g in m.algebra.names if g not in free)
    return free, rest


def change_of_basis(
    m: SullivanModel,
    matrix: Sequence[Sequence[Any]],
    names: Sequence[str] | None = None,
) -> SullivanModel:
    """
    Rewrite ``m`` in a new basis of the even generators.

    Row i of ``matrix`` expresses the new i-th even generator (which keeps the
    old name ``names[i]``) as a rational combination of the old ones. The
    matrix must be invertible and must not mix generators of different degree.
    """
    if not m.is_pure:
        raise StructuralError(f"{m!r} is not pure")
    names = tuple(names or m.even_generators)
    if sorted(names) != sorted(m.even_generators):
        raise StructuralError("Change of basis must cover every even generator")
    size = len(names)
    if len(matrix) != size or any(len(row) != size for row in matrix):
        raise StructuralError(f"Change-of-basis matrix must be {size}x{size}")

    entries = [[to_rational(value) for value in row] for row in matrix]
    for i, row in enumerate(entries):
        for j, value in enumerate(row):
            if value and m.degree(names[i]) != m.degree(names[j]):
                raise StructuralError(
                    f"Change of basis mixes {names[i]} and {names[j]} of different degrees"
                )
    try:
        inverse = DomainMatrix(entries, (size, size), QQ).inv().to_Matrix()
    except DMNonInvertibleMatrixError as exc:
        raise StructuralError("Change-of-basis matrix is singular") from exc

    algebra = m.algebra
    images: dict[str, Element] = {g: algebra.generator(g) for g in algebra.names}
    for j, old in enumerate(names):
        combination = algebra.zero
        for k, new in enumerate(names):
            if inverse[j, k]:
                combination = combination + algebra.generator(new) * inverse[j, k]
        images[old] = combination
    substitution = AlgebraMorphism(algebra, algebra, images)
    differential = {n: substitution(e) for n, e in m.differential.items()}
    logger.info(f"Applied change of basis on {list(names)}")
    return SullivanModel(algebra, differential, name=m.name)


# -------------------------------------------------------------- quotient A
class QuotientAlgebra(CochainAlgebra):
    """
    A = Λ(x_1..x_n)/(x_i²) ⊗ Λ(y_1..y_m) with the induced differential and the
    surjection φ: ΛW → A (x ↦ x, y ↦ y, u ↦ 0).
    """

    def __init__(
        self,
        algebra: GradedAlgebra,
        differential: Mapping[str, Element],
        phi: AlgebraMorphism,
        x_names: tuple[str, ...],
        y_names: tuple[str, ...],
        name: str = "",
    ):
        super().__init__(algebra, differential, name)
        self.phi = phi
        self.x_names = x_names
        self.y_names = y_names

    @property
    def dimension(self) -> int:
        return 2 ** (len(self.x_names) + len(self.y_names))

    @property
    def top_degree(self) -> int:
        return self.algebra.top_degree

    @property
    def top_monomial(self) -> tuple[int, ...]:
        return (1,) * len(self.algebra.generators)

    @property
    def top_element(self) -> Element:
        """x_[n]·y_[m], spanning the top degree."""
        return self.algebra.monomial_element(self.top_monomial)

    def bidegree(self, monomial: tuple[int, ...]) -> tuple[int, int]:
        p = self.algebra.wordlength(monomial, self.x_names)
        return p, sum(monomial) - p


def quotient_A(e: EllipticExtension) -> QuotientAlgebra:
    """Quotient A of the extension, with x_i² = 0 built into multiplication."""
    source = e.extension.algebra
    u_names = set(e.u_names)
    kept = [g for g in source.names if g not in u_names]
    algebra = source.restricted(kept).truncated({x: 1 for x in e.basis})
    phi = AlgebraMorphism(
        source, algebra, {g: algebra.generator(g) for g in kept}
    )
    differential = {
        y: phi(e.extension.derivation.image(y)) for y in kept
    }
    x_names = tuple(g for g in algebra.names if g in set(e.basis))
    y_names = tuple(g for g in algebra.names if g not in set(e.basis))
    label = f"A({e.base.name})" if e.base.name else "A"
    return QuotientAlgebra(algebra, differential, phi, x_names, y_names, name=label)


# ------------------------------------------------------------ tensor squares
@dataclass(frozen=True)
class TensorSquare:
    """
    C ⊗ C' realised on the doubled generator list (g, then g' for every g).
    """

    source: CochainAlgebra
    square: CochainAlgebra
    suffix: str
    _offset: int = field(repr=False)

    def prime(self, name: str) -> str:
        return f"{name}{self.suffix}"

    def left(self, element: Element) -> Element:
        """a ↦ a ⊗ 1."""
        return self.source.algebra.embed(element, self.square.algebra)

    def right(self, element: Element) -> Element:
        """a ↦ 1 ⊗ a, i.e. the primed copy."""
        self.source.algebra._check_owner(element)
        padding = (0,) * self._offset
        return Element._raw(
            self.square.algebra,
            {padding + monomial: c for monomial, c in element.terms.items()},
        )

    def difference(self, element: Element) -> Element:
        """a ⊗ 1 − 1 ⊗ a, always in the kernel of μ."""
        return self.left(element) - self.right(element)

    def zero_divisor(self, name: str) -> Element:
        return self.difference(self.source.algebra.generator(name))

    @cached_property
    def mu(self) -> AlgebraMorphism:
        """Multiplication map C ⊗ C → C."""
        algebra = self.source.algebra
        images = {}
        for name in algebra.names:
            images[name] = algebra.generator(name)
            images[self.prime(name)] = algebra.generator(name)
        return AlgebraMorphism(self.square.algebra, algebra, images)

    @cached_property
    def top_element(self) -> Element:
        return self.square.algebra.monomial_element(
            (1,) * len(self.square.algebra.generators)
        )


def tensor_square(c: CochainAlgebra, suffix: str | None = None) -> TensorSquare:
    """
    Double ``c``; a SullivanModel yields a SullivanModel square.

    Raises
    ------
    StructuralError
        If a generator name already follows the priming convention.
    """
    suffix = suffix or DEFAULTS["prime_suffix"]
    algebra = c.algebra
    names = set(algebra.names)
    for name in algebra.names:
        if name.endswith(suffix) or f"{name}{suffix}" in names:
            raise StructuralError(
                f"Generator {name!r} collides with the priming convention {suffix!r}"
            )
    primed = [Generator(f"{g.name}{suffix}", g.degree) for g in algebra.generators]
    truncations = {f"{n}{suffix}": cap for n, cap in algebra.truncations.items()}
    doubled = algebra.extended(primed, truncations)
    offset = len(algebra.generators)

    images = {}
    for name, image in c.differential.items():
        images[name] = algebra.embed(image, doubled)
        images[f"{name}{suffix}"] = Element._raw(
            doubled, {(0,) * offset + mono: v for mono, v in image.terms.items()}
        )
    label = f"{c.name}⊗{c.name}'" if c.name else ""
    if isinstance(c, SullivanModel):
        square: CochainAlgebra = SullivanModel(doubled, images, name=label)
    else:
        square = CochainAlgebra(doubled, images, name=label)
    return TensorSquare(c, square, suffix, offset)


def square_morphism(
    phi: AlgebraMorphism, source: TensorSquare, target: TensorSquare
) -> AlgebraMorphism:
    """φ ⊗ φ between two tensor squares, primes mapped to primes."""
    images = {}
    for name in source.source.algebra.names:
        image = phi.image(name)
        images[name] = target.left(image)
        images[source.prime(name)] = target.right(image)
    return AlgebraMorphism(source.square.algebra, target.square.algebra, images)


# --------------------------------------------------------------- ellipticity
def _axis_survives(m: SullivanModel, x: str) -> bool:
    position = m.algebra.index(x)
    for y in m.odd_generators:
        for monomial in m.derivation.image(y).terms:
            if sum(monomial) == monomial[position]:
                return False
    return True


def is_elliptic(m: SullivanModel, window_limit: int | None = None) -> Ellipticity:
    """
    Decide whether Q[X]/(dY) is finite dimensional.

    Quotient dimensions are computed degree by degree. A run of max|x| zero
    degrees proves every higher degree vanishes. The answer is NO when some
    even axis is untouched by the relations or when there are fewer
    relations than even generators; otherwise UNKNOWN once ``window_limit``
    is exhausted.
    """
    if not m.is_pure:
        raise StructuralError(f"{m!r} is not pure; ellipticity test needs a pure model")
    evens = m.even_generators
    if not evens:
        return Ellipticity.YES
    relations_all = [m.derivation.image(y) for y in m.odd_generators]
    relations_all = [r for r in relations_all if r]
    if len(relations_all) < len(evens):
        logger.debug(f"{m!r}: {len(relations_all)} relations for {len(evens)} evens")
        return Ellipticity.NO
    for x in evens:
        if _axis_survives(m, x):
            logger.debug(f"{m!r}: powers of {x} survive")
            return Ellipticity.NO

    ring = m.algebra.restricted(evens)
    relations = [m.algebra.embed(r, ring) for r in relations_all]
    widest = max(m.degree(x) for x in evens)
    if window_limit is None:
        estimate = sum(m.degree(y) for y in m.odd_generators) + widest
        window_limit = DEFAULTS["ellipticity_window_factor"] * estimate

    zero_run = 0
    for degree in range(1, window_limit + 1):
        monomials = ring.monomials_of_degree(degree)
        index = {mono: i for i, mono in enumerate(monomials)}
        spanning = []
        for relation in relations:
            for multiplier in ring.monomials_of_degree(degree - relation.degree):
                product = ring.multiply_terms({multiplier: QQ.one}, relation.terms)
                spanning.append({index[mono]: value for mono, value in product.items()})
        dimension = len(monomials) - rank(spanning, len(monomials))
        if dimension == 0:
            zero_run += 1
            if zero_run >= widest:
                logger.debug(f"{m!r}: quotient vanishes from degree {degree - widest + 1}")
                return Ellipticity.YES
        else:
            zero_run = 0
    logger.warning(f"Ellipticity of {m!r} undecided up to degree {window_limit}")
    return Ellipticity.UNKNOWN


def formal_dimension(m: SullivanModel) -> int:
    """Σ|y_j| − Σ(|x_i| − 1) for a pure elliptic model."""
    verdict = is_elliptic(m)
    if verdict is not Ellipticity.YES:
        raise NotComputableError(
            f"Formal dimension needs a verified elliptic model; {m!r} is {verdict.value}"
        )
    return sum(m.degree(y) for y in m.odd_generators) - sum(
        m.degree(x) - 1 for x in m.even_generators
    )
