# src/sullivan_tc/gca.py
"""
Free graded-commutative algebras over the rationals.

Monomials are exponent tuples aligned with the generator declaration order, which
is also the canonical order used to normalise Koszul signs. Coefficients are sympy
``QQ`` elements (``gmpy2.mpq`` when gmpy2 is installed), so every computation is
exact. Even generators may carry a truncation cap ``c`` (``x**(c+1) = 0``), which
is how quotients such as ``Λ(x)/(x²) ⊗ ΛY`` are represented.
"""

__all__ = [
    "AlgebraMorphism",
    "Derivation",
    "Element",
    "Generator",
    "GradedAlgebra",
    "Monomial",
    "apply_derivation",
    "coefficient_of",
    "multiply",
    "to_rational",
]

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from logging import getLogger
from types import MappingProxyType
from typing import Any

import regex
from sympy import QQ
from sympy.polys.polyerrors import CoercionFailed

from .errors import StructuralError

logger = getLogger(__name__)

Monomial = tuple[int, ...]
Rational = Any  # QQ.dtype: gmpy2.mpq or sympy's PythonMPQ

_NAME_PATTERN = regex.compile(r"[A-Za-z_][A-Za-z0-9_]*'*")


def to_rational(value: Any) -> Rational:
    """Coerce ints, fractions, sympy rationals and QQ elements into QQ."""
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, bool):
        raise StructuralError(f"Not a rational coefficient: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    try:
        return QQ.convert(value)
    except (CoercionFailed, TypeError) as exc:
        raise StructuralError(f"Not a rational coefficient: {value!r}") from exc


@dataclass(frozen=True)
class Generator:
    """A named generator of positive degree; odd degree means it squares to zero."""

    name: str
    degree: int

    def __post_init__(self) -> None:
        if not isinstance(self.degree, int) or self.degree < 1:
            raise StructuralError(
                f"Generator {self.name!r} must have positive degree, got {self.degree!r}"
            )
        if not _NAME_PATTERN.fullmatch(self.name):
            raise StructuralError(f"Invalid generator name: {self.name!r}")

    @property
    def parity(self) -> int:
        return self.degree % 2

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1

    @property
    def is_even(self) -> bool:
        return self.degree % 2 == 0


class GradedAlgebra:
    """
    Free graded-commutative algebra on an ordered generator list, optionally
    truncated on some even generators.

    Parameters
    ----------
    generators : Iterable[Generator]
        Generators in canonical order. Names must be unique.
    truncations : Mapping[str, int], optional
        Maximal exponent allowed for the named even generators, e.g.
        ``{"x1": 1}`` imposes ``x1² = 0``.
    """

    def __init__(
        self,
        generators: Iterable[Generator],
        truncations: Mapping[str, int] | None = None,
    ):
        self.generators: tuple[Generator, ...] = tuple(generators)
        self._index: dict[str, int] = {}
        for position, generator in enumerate(self.generators):
            if generator.name in self._index:
                raise StructuralError(f"Duplicate generator name: {generator.name!r}")
            self._index[generator.name] = position

        caps: list[int | None] = [1 if g.is_odd else None for g in self.generators]
        for name, cap in (truncations or {}).items():
            position = self.index(name)
            if self.generators[position].is_odd:
                raise StructuralError(f"Cannot truncate odd generator {name!r}")
            if cap < 1:
                raise StructuralError(f"Truncation of {name!r} must be >= 1, got {cap}")
            caps[position] = cap
        self._caps: tuple[int | None, ...] = tuple(caps)
        self._degrees: tuple[int, ...] = tuple(g.degree for g in self.generators)
        self._odd: tuple[int, ...] = tuple(
            i for i, g in enumerate(self.generators) if g.is_odd
        )
        self._degree_cache: dict[int, tuple[Monomial, ...]] = {}
        self._unit: Monomial = (0,) * len(self.generators)

    # ------------------------------------------------------------------ basics
    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def truncations(self) -> dict[str, int]:
        return {
            g.name: cap
            for g, cap in zip(self.generators, self._caps, strict=True)
            if g.is_even and cap is not None
        }

    @property
    def unit_monomial(self) -> Monomial:
        return self._unit

    def __len__(self) -> int:
        return len(self.generators)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return self.generators == other.generators and self._caps == other._caps

    def __hash__(self) -> int:
        return hash((self.generators, self._caps))

    def __repr__(self) -> str:
        parts = []
        for generator, cap in zip(self.generators, self._caps, strict=True):
            label = f"{generator.name}:{generator.degree}"
            if generator.is_even and cap is not None:
                label += f"^<={cap}"
            parts.append(label)
        return f"GradedAlgebra({', '.join(parts)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"Unknown generator: {name!r}") from None

    def generator_info(self, name: str) -> Generator:
        return self.generators[self.index(name)]

    def cap(self, name: str) -> int | None:
        return self._caps[self.index(name)]

    # --------------------------------------------------------------- elements
    @cached_property
    def zero(self) -> "Element":
        return Element._raw(self, {})

    @cached_property
    def one(self) -> "Element":
        return Element._raw(self, {self._unit: QQ.one})

    def scalar(self, value: Any) -> "Element":
        coefficient = to_rational(value)
        if not coefficient:
            return self.zero
        return Element._raw(self, {self._unit: coefficient})

    def generator(self, name: str) -> "Element":
        exponents = [0] * len(self.generators)
        exponents[self.index(name)] = 1
        return Element._raw(self, {tuple(exponents): QQ.one})

    def generators_as_elements(self) -> dict[str, "Element"]:
        return {name: self.generator(name) for name in self.names}

    def monomial(self, exponents: Mapping[str, int]) -> Monomial:
        """Canonical monomial from a name -> exponent mapping (zero if capped)."""
        values = [0] * len(self.generators)
        for name, exponent in exponents.items():
            if exponent < 0:
                raise StructuralError(f"Negative exponent for {name!r}")
            values[self.index(name)] = exponent
        return tuple(values)

    def is_valid_monomial(self, monomial: Monomial) -> bool:
        if len(monomial) != len(self.generators):
            return False
        return all(
            exponent >= 0 and (cap is None or exponent <= cap)
            for exponent, cap in zip(monomial, self._caps, strict=True)
        )

    def element(self, terms: Mapping[Monomial, Any] | None = None) -> "Element":
        return Element(self, terms or {})

    def monomial_element(self, monomial: Monomial, coefficient: Any = 1) -> "Element":
        return Element(self, {monomial: coefficient})

    def product_of(self, names: Iterable[str]) -> "Element":
        """Ordered product of the named generators, e.g. ``x_[n]·y_[m]``."""
        result = self.one
        for name in names:
            result = result * self.generator(name)
        return result

    # ---------------------------------------------------------------- grading
    def degree_of(self, monomial: Monomial) -> int:
        return sum(e * d for e, d in zip(monomial, self._degrees, strict=True))

    def wordlength(self, monomial: Monomial, names: Iterable[str] | None = None) -> int:
        if names is None:
            return sum(monomial)
        return sum(monomial[self.index(name)] for name in names)

    def odd_count(self, monomial: Monomial) -> int:
        return sum(monomial[i] for i in self._odd)

    @property
    def is_finite_dimensional(self) -> bool:
        return all(cap is not None for cap in self._caps)

    @property
    def top_degree(self) -> int:
        if not self.is_finite_dimensional:
            raise StructuralError(f"{self!r} is infinite dimensional")
        return sum(
            cap * degree
            for cap, degree in zip(self._caps, self._degrees, strict=True)
            if cap is not None
        )

    def monomials_of_degree(self, degree: int) -> tuple[Monomial, ...]:
        """All canonical monomials of the given total degree, in descending order."""
        if degree < 0:
            return ()
        cached = self._degree_cache.get(degree)
        if cached is not None:
            return cached

        count = len(self.generators)
        # reachable[i] = max degree reachable using generators i..end (None = unbounded)
        reachable: list[int | None] = [0] * (count + 1)
        for position in range(count - 1, -1, -1):
            following = reachable[position + 1]
            cap = self._caps[position]
            if following is None or cap is None:
                reachable[position] = None
            else:
                reachable[position] = following + cap * self._degrees[position]

        found: list[Monomial] = []
        exponents = [0] * count

        def _walk(position: int, remaining: int) -> None:
            if remaining == 0:
                found.append(tuple(exponents))
                return
            if position == count:
                return
            limit = reachable[position]
            if limit is not None and limit < remaining:
                return
            step = self._degrees[position]
            cap = self._caps[position]
            top = remaining // step
            if cap is not None:
                top = min(top, cap)
            for exponent in range(top, -1, -1):
                exponents[position] = exponent
                _walk(position + 1, remaining - exponent * step)
            exponents[position] = 0

        _walk(0, degree)
        result = tuple(found)
        self._degree_cache[degree] = result
        return result

    # ---------------------------------------------------------- multiplication
    def merge(self, left: Monomial, right: Monomial) -> tuple[int, Monomial]:
        """
        Multiply two monomials.

        Returns
        -------
        tuple[int, Monomial]
            ``(sign, product)`` with sign in {-1, 0, 1}; sign 0 means the
            product vanishes (odd square or truncation).
        """
        caps = self._caps
        product = []
        for position, (a, b) in enumerate(zip(left, right, strict=True)):
            exponent = a + b
            cap = caps[position]
            if cap is not None and exponent > cap:
                return 0, self._unit
            product.append(exponent)
        parity = 0
        seen = 0
        for position in reversed(self._odd):
            if right[position]:
                parity ^= seen & 1
            if left[position]:
                seen += 1
        return (-1 if parity else 1), tuple(product)

    def multiply_terms(
        self, left: Mapping[Monomial, Rational], right: Mapping[Monomial, Rational]
    ) -> dict[Monomial, Rational]:
        result: dict[Monomial, Rational] = {}
        for m1, c1 in left.items():
            for m2, c2 in right.items():
                sign, product = self.merge(m1, m2)
                if not sign:
                    continue
                value = c1 * c2 if sign > 0 else -(c1 * c2)
                current = result.get(product)
                if current is None:
                    result[product] = value
                else:
                    total = current + value
                    if total:
                        result[product] = total
                    else:
                        del result[product]
        return result

    def multiply(self, left: "Element", right: "Element") -> "Element":
        self._check_owner(left)
        self._check_owner(right)
        return Element._raw(self, self.multiply_terms(left._terms, right._terms))

    def _check_owner(self, element: "Element") -> None:
        if element.algebra is not self and element.algebra != self:
            raise StructuralError(
                f"Element over {element.algebra!r} used in {self!r}"
            )

    # --------------------------------------------------------- constructions
    def extended(
        self,
        generators: Iterable[Generator],
        truncations: Mapping[str, int] | None = None,
    ) -> "GradedAlgebra":
        """Algebra with extra generators appended after the existing ones."""
        merged = dict(self.truncations)
        merged.update(truncations or {})
        return GradedAlgebra((*self.generators, *generators), merged)

    def restricted(self, names: Iterable[str]) -> "GradedAlgebra":
        """Sub-algebra on the named generators, keeping this algebra's order."""
        wanted = set(names)
        for name in wanted:
            self.index(name)
        kept = [g for g in self.generators if g.name in wanted]
        caps = {n: c for n, c in self.truncations.items() if n in wanted}
        return GradedAlgebra(kept, caps)

    def truncated(self, truncations: Mapping[str, int]) -> "GradedAlgebra":
        merged = dict(self.truncations)
        merged.update(truncations)
        return GradedAlgebra(self.generators, merged)

    def embed(self, element: "Element", target: "GradedAlgebra") -> "Element":
        """
        Transport an element to another algebra by generator name.

        Generators keep their images (``g -> g``); monomials exceeding the
        target's truncation caps vanish. Generators absent from the target must
        not occur in ``element``. When the relative generator order is
        preserved this is a re-indexing, otherwise signs are recomputed by
        multiplying the images in the target.
        """
        self._check_owner(element)
        if target is self or target == self:
            return element
        positions: list[int | None] = []
        for position, generator in enumerate(self.generators):
            if generator.name not in target:
                if any(monomial[position] for monomial in element._terms):
                    raise StructuralError(
                        f"{element} involves {generator.name!r}, missing from {target!r}"
                    )
                positions.append(None)
                continue
            if target.generator_info(generator.name).degree != generator.degree:
                raise StructuralError(f"Degree of {generator.name!r} differs in target")
            positions.append(target.index(generator.name))
        present = [p for p in positions if p is not None]
        if present != sorted(present):
            images = {
                name: target.generator(name) for name in self.names if name in target
            }
            return AlgebraMorphism(self, target, images)(element)

        width = len(target.generators)
        terms: dict[Monomial, Rational] = {}
        for monomial, coefficient in element._terms.items():
            exponents = [0] * width
            for position, exponent in zip(positions, monomial, strict=True):
                if position is not None:
                    exponents[position] = exponent
            moved = tuple(exponents)
            if target.is_valid_monomial(moved):
                terms[moved] = coefficient
        return Element._raw(target, terms)

    # ------------------------------------------------------------- rendering
    def format_monomial(self, monomial: Monomial) -> str:
        factors = []
        for generator, exponent in zip(self.generators, monomial, strict=True):
            if exponent == 1:
                factors.append(generator.name)
            elif exponent > 1:
                factors.append(f"{generator.name}^{exponent}")
        return "*".join(factors) if factors else "1"


class Element:
    """Immutable sparse rational combination of canonical monomials."""

    __slots__ = ("_hash", "_terms", "algebra")

    def __init__(self, algebra: GradedAlgebra, terms: Mapping[Monomial, Any]):
        normalised: dict[Monomial, Rational] = {}
        for monomial, value in terms.items():
            monomial = tuple(monomial)
            if not algebra.is_valid_monomial(monomial):
                if len(monomial) == len(algebra.generators) and min(monomial) >= 0:
                    # exceeds an odd or truncation cap: the monomial is zero
                    continue
                raise StructuralError(f"Malformed monomial {monomial} for {algebra!r}")
            coefficient = to_rational(value)
            if coefficient:
                normalised[monomial] = normalised.get(monomial, QQ.zero) + coefficient
                if not normalised[monomial]:
                    del normalised[monomial]
        self.algebra = algebra
        self._terms = normalised
        self._hash: int | None = None

    @classmethod
    def _raw(cls, algebra: GradedAlgebra, terms: dict[Monomial, Rational]) -> "Element":
        element = cls.__new__(cls)
        element.algebra = algebra
        element._terms = terms
        element._hash = None
        return element

    # ------------------------------------------------------------ inspection
    @property
    def terms(self) -> Mapping[Monomial, Rational]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Rational]]:
        return iter(self._terms.items())

    def coefficient(self, monomial: Monomial) -> Rational:
        return self._terms.get(tuple(monomial), QQ.zero)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degrees(self) -> set[int]:
        return {self.algebra.degree_of(m) for m in self._terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        """Total degree of a homogeneous element; None for zero."""
        degrees = self.degrees
        if not degrees:
            return None
        if len(degrees) > 1:
            raise StructuralError(f"Element {self} is not homogeneous")
        return next(iter(degrees))

    def wordlengths(self) -> set[int]:
        return {sum(m) for m in self._terms}

    def homogeneous_parts(self) -> dict[int, "Element"]:
        parts: dict[int, dict[Monomial, Rational]] = {}
        for monomial, coefficient in self._terms.items():
            degree = self.algebra.degree_of(monomial)
            parts.setdefault(degree, {})[monomial] = coefficient
        return {d: Element._raw(self.algebra, t) for d, t in sorted(parts.items())}

    def sorted_terms(self) -> list[tuple[Monomial, Rational]]:
        return sorted(self._terms.items(), key=lambda item: item[0], reverse=True)

    # ------------------------------------------------------------ arithmetic
    def _coerce(self, other: Any) -> "Element":
        if isinstance(other, Element):
            self.algebra._check_owner(other)
            return other
        return self.algebra.scalar(other)

    def __add__(self, other: Any) -> "Element":
        try:
            other = self._coerce(other)
        except StructuralError:
            if isinstance(other, Element):
                raise
            return NotImplemented
        result = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            total = result.get(monomial, QQ.zero) + coefficient
            if total:
                result[monomial] = total
            else:
                result.pop(monomial, None)
        return Element._raw(self.algebra, result)

    def __radd__(self, other: Any) -> "Element":
        return self.__add__(other)

    def __neg__(self) -> "Element":
        return Element._raw(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> "Element":
        if isinstance(other, Element):
            return self + (-other)
        return self + self.algebra.scalar(other) * -1

    def __rsub__(self, other: Any) -> "Element":
        return (-self) + other

    def __mul__(self, other: Any) -> "Element":
        if isinstance(other, Element):
            return self.algebra.multiply(self, other)
        try:
            factor = to_rational(other)
        except StructuralError:
            return NotImplemented
        if not factor:
            return self.algebra.zero
        return Element._raw(self.algebra, {m: c * factor for m, c in self._terms.items()})

    def __rmul__(self, other: Any) -> "Element":
        # only scalars reach here: Element * Element is handled by __mul__
        return self.__mul__(other)

    def __truediv__(self, other: Any) -> "Element":
        divisor = to_rational(other)
        if not divisor:
            raise ZeroDivisionError("Division of an element by zero")
        return self * (QQ.one / divisor)

    # ------------------------------------------------------------ comparison
    def __eq__(self, other: object) -> bool:
        if isinstance(other, Element):
            return (
                self.algebra == other.algebra and self._terms == other._terms
            )
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for monomial, coefficient in self.sorted_terms():
            negative = coefficient < 0
            magnitude = -coefficient if negative else coefficient
            body = self.algebra.format_monomial(monomial)
            if body == "1":
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            if not pieces:
                pieces.append(f"-{text}" if negative else text)
            else:
                pieces.append(f"- {text}" if negative else f"+ {text}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Element({self})"


def multiply(a: Element, b: Element) -> Element:
    """Graded-commutative product of two elements of the same algebra."""
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        raise StructuralError("Cannot multiply elements of different algebras")
    return a.algebra.multiply(a, b)


class Derivation:
    """
    Degree +1 derivation determined by its values on generators.

    Generators missing from ``images`` are sent to zero. Images are checked to be
    homogeneous of degree ``|g| + 1`` at construction.
    """

    def __init__(self, algebra: GradedAlgebra, images: Mapping[str, Element]):
        self.algebra = algebra
        values: list[Element | None] = [None] * len(algebra.generators)
        for name, image in images.items():
            position = algebra.index(name)
            if image is None:
                continue
            if not isinstance(image, Element):
                raise StructuralError(f"Image of {name!r} is not an Element")
            algebra._check_owner(image)
            if image.is_zero:
                continue
            expected = algebra.generators[position].degree + 1
            if image.degrees != {expected}:
                raise StructuralError(
                    f"d({name}) = {image} must be homogeneous of degree {expected}"
                )
            values[position] = image
        self._images: tuple[Element | None, ...] = tuple(values)
        self._cache: dict[Monomial, dict[Monomial, Rational]] = {}

    def image(self, name: str) -> Element:
        value = self._images[self.algebra.index(name)]
        return value if value is not None else self.algebra.zero

    @property
    def images(self) -> dict[str, Element]:
        return {name: self.image(name) for name in self.algebra.names}

    def on_monomial(self, monomial: Monomial) -> dict[Monomial, Rational]:
        cached = self._cache.get(monomial)
        if cached is not None:
            return cached
        algebra = self.algebra
        result: dict[Monomial, Rational] = {}
        prefix = [0] * len(monomial)
        prefix_degree = 0
        for position, exponent in enumerate(monomial):
            image = self._images[position]
            if exponent and image is not None:
                rest = list(monomial)
                for earlier in range(position):
                    rest[earlier] = 0
                rest[position] = exponent - 1
                scale = QQ(exponent) if prefix_degree % 2 == 0 else QQ(-exponent)
                partial = algebra.multiply_terms({tuple(prefix): scale}, image._terms)
                partial = algebra.multiply_terms(partial, {tuple(rest): QQ.one})
                for term, coefficient in partial.items():
                    total = result.get(term, QQ.zero) + coefficient
                    if total:
                        result[term] = total
                    else:
                        result.pop(term, None)
            prefix[position] = exponent
            prefix_degree += exponent * algebra.generators[position].degree
        self._cache[monomial] = result
        return result

    def __call__(self, element: Element) -> Element:
        self.algebra._check_owner(element)
        result: dict[Monomial, Rational] = {}
        for monomial, coefficient in element._terms.items():
            for term, value in self.on_monomial(monomial).items():
                total = result.get(term, QQ.zero) + coefficient * value
                if total:
                    result[term] = total
                else:
                    result.pop(term, None)
        return Element._raw(self.algebra, result)


def apply_derivation(d: Derivation | Mapping[str, Element], a: Element) -> Element:
    """Apply the derivation extending ``d`` (a map on generators) to ``a``."""
    if not isinstance(d, Derivation):
        d = Derivation(a.algebra, d)
    return d(a)


class AlgebraMorphism:
    """Multiplicative extension of generator images into a target algebra."""

    def __init__(
        self,
        source: GradedAlgebra,
        target: GradedAlgebra,
        images: Mapping[str, Element | None],
    ):
        self.source = source
        self.target = target
        values: list[Element] = []
        for generator in source.generators:
            image = images.get(generator.name)
            if image is None:
                values.append(target.zero)
                continue
            target._check_owner(image)
            if not image.is_zero and image.degrees != {generator.degree}:
                raise StructuralError(
                    f"Image of {generator.name!r} must have degree {generator.degree}"
                )
            values.append(image)
        self._images = tuple(values)
        self._cache: dict[Monomial, dict[Monomial, Rational]] = {}

    def image(self, name: str) -> Element:
        return self._images[self.source.index(name)]

    def on_monomial(self, monomial: Monomial) -> dict[Monomial, Rational]:
        cached = self._cache.get(monomial)
        if cached is not None:
            return cached
        terms: dict[Monomial, Rational] = {self.target.unit_monomial: QQ.one}
        for position, exponent in enumerate(monomial):
            for _ in range(exponent):
                terms = self.target.multiply_terms(terms, self._images[position]._terms)
                if not terms:
                    break
            if not terms:
                break
        self._cache[monomial] = terms
        return terms

    def __call__(self, element: Element) -> Element:
        self.source._check_owner(element)
        result: dict[Monomial, Rational] = {}
        for monomial, coefficient in element._terms.items():
            for term, value in self.on_monomial(monomial).items():
                total = result.get(term, QQ.zero) + coefficient * value
                if total:
                    result[term] = total
                else:
                    result.pop(term, None)
        return Element._raw(self.target, result)


def coefficient_of(a: Element, names: Iterable[str]) -> dict[tuple[str, ...], Element]:
    """
    Expand ``a`` along the exterior algebra on the odd generators ``names``.

    Parameters
    ----------
    a : Element
        Element of an algebra containing every generator in ``names``.
    names : Iterable[str]
        Odd generators to split off.

    Returns
    -------
    dict[tuple[str, ...], Element]
        Maps each canonical S-monomial (tuple of names, ``()`` for 1) to its
        coefficient ``c_M``, with ``a = Σ c_M · M`` and every ``c_M`` free of S.
    """
    algebra = a.algebra
    positions = sorted({algebra.index(name) for name in names})
    for position in positions:
        if not algebra.generators[position].is_odd:
            raise StructuralError(
                f"coefficient_of expects odd generators, "
                f"{algebra.generators[position].name!r} is even"
            )

    split: dict[tuple[int, ...], dict[Monomial, Rational]] = {}
    for monomial, coefficient in a._terms.items():
        base = list(monomial)
        selector = [0] * len(monomial)
        chosen = []
        for position in positions:
            if monomial[position]:
                base[position] = 0
                selector[position] = 1
                chosen.append(position)
        sign, product = algebra.merge(tuple(base), tuple(selector))
        if not sign or product != monomial:
            raise StructuralError("Inconsistent monomial split in coefficient_of")
        bucket = split.setdefault(tuple(chosen), {})
        value = coefficient if sign > 0 else -coefficient
        bucket[tuple(base)] = bucket.get(tuple(base), QQ.zero) + value

    result: dict[tuple[str, ...], Element] = {}
    for key, terms in split.items():
        element = Element(algebra, terms)
        if element:
            result[tuple(algebra.generators[p].name for p in key)] = element
    return result
