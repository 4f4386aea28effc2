# src/sullivan_tc/witness.py
"""
Explicit zero-divisor cocycles certifying lower bounds for topological
complexity.

Every certificate is a product of blocks in ΛW ⊗ ΛW', each block written as a
sum of kernel terms (products of elements killed by the multiplication map μ).
The power of a certificate is the number of μ-kernel factors it is built
from. Non-vanishing is proved in A ⊗ A': the image of the product under
φ ⊗ φ, possibly multiplied by a cocycle, lands in the top degree, which is
one dimensional and free of coboundaries, so its class is read off as the
coefficient of the top monomial.
"""

__all__ = [
    "CONSTRUCTIONS",
    "KernelTerm",
    "WitnessBlock",
    "WitnessCertificate",
    "auto_certificates",
    "cuplength_certificate",
    "detect_split_partition",
    "diagonal_certificate",
    "difference_scaling_check",
    "fundamental_cocycle",
    "lift_class",
    "odd_difference_identity",
    "single_odd_beta",
    "single_odd_certificate",
    "split_family_certificate",
]

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from logging import getLogger
from typing import Any

from sympy import QQ

from .cohom import (
    CohomologyClass,
    CohomologyTable,
    bigraded_cohomology,
    poincare_dual,
    solve_coboundary,
)
from .config import DEFAULTS
from .errors import ConstructionError, NotComputableError, StructuralError
from .gca import Element, Generator, GradedAlgebra, Monomial, coefficient_of
from .model import (
    EllipticExtension,
    QuotientAlgebra,
    SullivanModel,
    TensorSquare,
    elliptic_extension,
    quotient_A,
    recognize_extension,
    square_morphism,
    sub_extension,
    tensor_square,
)

logger = getLogger(__name__)

CONSTRUCTIONS = ("omega", "cuplength", "single-odd", "split-family")

HALF = QQ(1, 2)
QUARTER = QQ(1, 4)


@dataclass(frozen=True)
class KernelTerm:
    """``scalar · ∏ factors · cofactor`` with every factor in ker μ."""

    scalar: Any
    factors: tuple[Element, ...]
    cofactor: Element | None = None

    def value(self) -> Element:
        pieces = [*self.factors]
        if self.cofactor is not None:
            pieces.append(self.cofactor)
        if not pieces:
            raise StructuralError("A kernel term needs a factor or a cofactor")
        result = pieces[0]
        for piece in pieces[1:]:
            result = result * piece
        return result * self.scalar

    def negated(self) -> "KernelTerm":
        return KernelTerm(-self.scalar, self.factors, self.cofactor)

    def transported(self, target: GradedAlgebra) -> "KernelTerm":
        def move(element: Element) -> Element:
            return element.algebra.embed(element, target)

        return KernelTerm(
            self.scalar,
            tuple(move(f) for f in self.factors),
            None if self.cofactor is None else move(self.cofactor),
        )


@dataclass(frozen=True)
class WitnessBlock:
    label: str
    element: Element
    terms: tuple[KernelTerm, ...]

    @property
    def power(self) -> int:
        return min((len(t.factors) for t in self.terms), default=0)

    def expanded(self) -> Element:
        result = self.element.algebra.zero
        for term in self.terms:
            result = result + term.value()
        return result


@dataclass
class WitnessCertificate:
    """
    A product of blocks in ΛW ⊗ ΛW' and the evidence that its class is not zero.

    Attributes
    ----------
    construction : str
        One of ``CONSTRUCTIONS``.
    extension : EllipticExtension
        The elliptic extension ΛW the witness lives in.
    blocks : tuple[WitnessBlock, ...]
        Factors of the witness, multiplied left to right.
    image : Element
        Top-degree element of A ⊗ A' proving non-vanishing.
    scalar : Any
        Coefficient of ``image`` on the top monomial.
    adjoined : int
        Number of generators adjoined to the input model to build ΛW.
    """

    construction: str
    extension: EllipticExtension
    blocks: tuple[WitnessBlock, ...]
    image: Element
    scalar: Any
    adjoined: int = 0
    notes: tuple[str, ...] = field(default=())

    @property
    def power(self) -> int:
        return sum(block.power for block in self.blocks)

    @property
    def certified_lower_bound(self) -> int:
        return self.power - self.adjoined

    @cached_property
    def product(self) -> Element:
        """Full expansion of the witness in ΛW ⊗ ΛW'."""
        result = self.blocks[0].element
        for block in self.blocks[1:]:
            result = result * block.element
        return result


# ------------------------------------------------------------------ setting
class _Setting:
    """ΛW, A, both tensor squares and φ ⊗ φ for one extension."""

    def __init__(self, e: EllipticExtension):
        self.e = e
        self.A: QuotientAlgebra = quotient_A(e)
        self.source: TensorSquare = tensor_square(e.extension)
        self.target: TensorSquare = tensor_square(self.A)
        self.phi2 = square_morphism(self.A.phi, self.source, self.target)

    @property
    def algebra(self) -> GradedAlgebra:
        return self.source.square.algebra

    def generator(self, name: str) -> Element:
        return self.e.extension.algebra.generator(name)

    def difference(self, name: str) -> Element:
        return self.source.zero_divisor(name)

    def primed(self, name: str) -> Element:
        return self.source.right(self.generator(name))

    def image(self, element: Element) -> Element:
        return self.phi2(element)

    @cached_property
    def top_monomial(self) -> Monomial:
        return (1,) * len(self.target.square.algebra.generators)

    @cached_property
    def omega_A(self) -> Element:
        """∏(x_i − x'_i)·∏(y_j − y'_j) in A ⊗ A'."""
        result = self.target.square.algebra.one
        for name in (*self.e.basis, *self.e.y_names):
            result = result * self.target.zero_divisor(name)
        return result

    def top_scalar(self, element: Element) -> Any:
        if element.is_zero:
            return QQ.zero
        if element.degree != self.target.square.algebra.top_degree:
            raise ConstructionError(
                f"Evidence has degree {element.degree}, expected the top degree "
                f"{self.target.square.algebra.top_degree}"
            )
        return element.coefficient(self.top_monomial)

    def check_block(self, block: WitnessBlock) -> None:
        if not self.source.square.is_cocycle(block.element):
            raise ConstructionError(f"Block {block.label!r} is not a cocycle")
        seen: set[Element] = set()
        for term in block.terms:
            for factor in term.factors:
                if factor in seen:
                    continue
                seen.add(factor)
                if self.source.mu(factor):
                    raise ConstructionError(
                        f"Factor {factor} of block {block.label!r} is not in ker μ"
                    )

    @cached_property
    def omega_block(self) -> WitnessBlock:
        return _omega_block(self)


@lru_cache(maxsize=32)
def _setting(e: EllipticExtension) -> _Setting:
    return _Setting(e)


def _adjoined(e: EllipticExtension) -> int:
    return e.n if e.adjoined else 0


def _fresh_names(algebra: GradedAlgebra, stems: Sequence[str], prefix: str) -> list[str]:
    taken = set(algebra.names)
    names = []
    for i, stem in enumerate(stems, start=1):
        for candidate in (f"{prefix}{i}", f"{prefix}_{stem}", f"{prefix}{i}_{stem}"):
            if candidate not in taken:
                break
        else:
            raise StructuralError(f"Cannot name the suspension of {stem!r}")
        taken.add(candidate)
        names.append(candidate)
    return names


def _quadratic_part(
    e: EllipticExtension, y: str
) -> tuple[dict[str, Any], dict[tuple[str, str], Any]]:
    """
    Coefficients of dy = Σ α_k x_k² + Σ_{p<q} β_pq x_p x_q, with p < q in the
    order of ``e.basis``.

    Raises
    ------
    NotComputableError
        If dy is not a quadratic polynomial in the basis.
    """
    algebra = e.extension.algebra
    rank = {x: i for i, x in enumerate(e.basis)}
    alpha: dict[str, Any] = {}
    beta: dict[tuple[str, str], Any] = {}
    for monomial, coefficient in e.extension.derivation.image(y).terms.items():
        present = [
            (algebra.generators[i].name, exponent)
            for i, exponent in enumerate(monomial)
            if exponent
        ]
        if any(name not in rank for name, _ in present):
            raise NotComputableError(f"d({y}) involves generators outside the basis")
        if len(present) == 1 and present[0][1] == 2:
            alpha[present[0][0]] = coefficient
        elif len(present) == 2 and present[0][1] == present[1][1] == 1:
            p, q = sorted((present[0][0], present[1][0]), key=rank.__getitem__)
            beta[(p, q)] = coefficient
        else:
            raise NotComputableError(f"d({y}) is not quadratic")
    return alpha, beta


def _top_coefficient(
    algebra: GradedAlgebra, factors: Sequence[Element], names: Sequence[str]
) -> Element:
    """
    Coefficient of the product of the odd generators ``names`` in ∏ factors.

    Partial products are pruned of monomials that can no longer collect every
    generator in ``names``; each factor carries at most one of them.
    """
    positions = [algebra.index(name) for name in names]
    supplies = [
        {p for p in positions if any(monomial[p] for monomial in factor.terms)}
        for factor in factors
    ]
    ahead: list[set[int]] = [set() for _ in range(len(factors) + 1)]
    for k in range(len(factors) - 1, -1, -1):
        ahead[k] = ahead[k + 1] | supplies[k]

    partial: dict[Monomial, Any] = {algebra.unit_monomial: QQ.one}
    for k, factor in enumerate(factors):
        partial = algebra.multiply_terms(partial, factor.terms)
        remaining = len(factors) - k - 1
        later = ahead[k + 1]
        kept = {}
        for monomial, value in partial.items():
            missing = [p for p in positions if not monomial[p]]
            if len(missing) <= remaining and all(p in later for p in missing):
                kept[monomial] = value
        partial = kept
    expansion = coefficient_of(Element._raw(algebra, partial), names)
    return expansion.get(tuple(names), algebra.zero)


# -------------------------------------------------------------------- omega
def fundamental_cocycle(e: EllipticExtension) -> Element:
    """
    Cocycle ω of ΛW representing its fundamental class.

    ω is the coefficient of x̄_1⋯x̄_n in
    ∏_j (y_j − Σ α x_k x̄_k − Σ β x_p x̄_q) · ∏_i (u_i − x_i x̄_i), computed in
    ΛW ⊗ Λ(x̄) with dx̄ = x.

    Raises
    ------
    ConstructionError
        If dω ≠ 0 or φ(ω) ≠ (−1)^n x_[n] y_[m].
    """
    source = e.extension.algebra
    bars = _fresh_names(source, e.basis, DEFAULTS["suspension_prefix"])
    algebra = source.extended(
        [Generator(b, e.extension.degree(x) - 1) for b, x in zip(bars, e.basis, strict=True)]
    )
    bar_of = dict(zip(e.basis, bars, strict=True))

    def gen(name: str) -> Element:
        return algebra.generator(name)

    factors = []
    for y in e.y_names:
        alpha, beta = _quadratic_part(e, y)
        factor = gen(y)
        for x, a in alpha.items():
            factor = factor - gen(x) * gen(bar_of[x]) * a
        for (p, q), b in beta.items():
            factor = factor - gen(p) * gen(bar_of[q]) * b
        factors.append(factor)
    for x in e.basis:
        factors.append(gen(e.u_of(x)) - gen(x) * gen(bar_of[x]))

    omega = algebra.embed(_top_coefficient(algebra, factors, bars), source)
    if not e.extension.is_cocycle(omega):
        raise ConstructionError("ω is not a cocycle")
    A = quotient_A(e)
    expected = A.algebra.product_of(e.basis) * A.algebra.product_of(e.y_names)
    if A.phi(omega) != expected * (-1) ** e.n:
        raise ConstructionError("φ(ω) does not represent the fundamental class of A")
    logger.debug(f"ω of {e.extension!r} has {len(omega)} terms")
    return omega


def _choice_term(picked: Sequence[tuple[int | None, Element, Any]]) -> KernelTerm:
    """Kernel term of one choice of components, σ's moved to the right."""
    scalar = QQ.one
    parities = [factor.degree % 2 for _, factor, _ in picked]
    exponent = 0
    order = []
    for k, (sigma, _, value) in enumerate(picked):
        scalar *= value
        if sigma is not None:
            exponent += sum(parities[k + 1 :])
            order.append(sigma)
    exponent += sum(1 for a, b in combinations(order, 2) if a > b)
    if exponent % 2:
        scalar = -scalar
    return KernelTerm(scalar, tuple(factor for _, factor, _ in picked))


def _expand_choices(
    components: Sequence[Sequence[tuple[int | None, Element, Any]]], width: int
) -> list[KernelTerm]:
    terms: list[KernelTerm] = []
    count = len(components)

    def walk(k: int, used: frozenset[int], picked: list) -> None:
        if width - len(used) > count - k:
            return
        if k == count:
            terms.append(_choice_term(picked))
            return
        for component in components[k]:
            sigma = component[0]
            if sigma is None:
                walk(k + 1, used, [*picked, component])
            elif sigma not in used:
                walk(k + 1, used | {sigma}, [*picked, component])

    walk(0, frozenset(), [])
    return terms


def _omega_block(setting: _Setting) -> WitnessBlock:
    e = setting.e
    square = setting.algebra
    sigmas = _fresh_names(square, e.basis, DEFAULTS["suspension_prefix"])
    sigma_algebra = square.extended(
        [Generator(s, e.extension.degree(x) - 1) for s, x in zip(sigmas, e.basis, strict=True)]
    )

    # factor -> components (σ index or None, μ-kernel element, scalar)
    components: list[list[tuple[int | None, Element, Any]]] = []
    for y in e.y_names:
        alpha, beta = _quadratic_part(e, y)
        parts: list[tuple[int | None, Element, Any]] = [(None, setting.difference(y), QQ.one)]
        for s, x in enumerate(e.basis):
            coefficient = setting.difference(x) * alpha.get(x, 0)
            for (p, q), b in beta.items():
                if p == x:
                    coefficient = coefficient + setting.difference(q) * (b * HALF)
                elif q == x:
                    coefficient = coefficient + setting.difference(p) * (b * HALF)
            if coefficient:
                parts.append((s, coefficient, -QQ.one))
        components.append(parts)
    for i, x in enumerate(e.basis):
        components.append(
            [(None, setting.difference(e.u_of(x)), QQ.one), (i, setting.difference(x), -QQ.one)]
        )

    factors = []
    for parts in components:
        factor = sigma_algebra.zero
        for sigma, element, value in parts:
            lifted = square.embed(element, sigma_algebra) * value
            if sigma is not None:
                lifted = lifted * sigma_algebra.generator(sigmas[sigma])
            factor = factor + lifted
        factors.append(factor)

    omega = sigma_algebra.embed(_top_coefficient(sigma_algebra, factors, sigmas), square)
    block = WitnessBlock("Omega", omega, tuple(_expand_choices(components, e.n)))
    if block.expanded() != omega:
        raise ConstructionError("Ω disagrees with its expansion into kernel terms")
    setting.check_block(block)
    expected = setting.omega_A * (-1) ** e.n
    if setting.image(omega) != expected:
        raise ConstructionError("(φ⊗φ)(Ω) differs from (−1)^n Ω_A")
    logger.debug(f"Ω built from {len(block.terms)} kernel terms, power {block.power}")
    return block


def diagonal_certificate(e: EllipticExtension) -> WitnessCertificate:
    """
    Ω alone: a cocycle of (ker μ)^{n+m} whose class pairs with [ω'_A] to the
    top class of A ⊗ A'.
    """
    setting = _setting(e)
    block = setting.omega_block
    image = setting.image(block.element) * setting.target.right(setting.A.top_element)
    scalar = setting.top_scalar(image)
    if not scalar:
        raise ConstructionError("[Ω_A]·[ω'_A] vanishes")
    return WitnessCertificate("omega", e, (block,), image, scalar, _adjoined(e))


# ---------------------------------------------------------- lifting through φ
def _kernel_monomials(e: EllipticExtension, degree: int) -> list[Monomial]:
    algebra = e.extension.algebra
    u_positions = [algebra.index(u) for u in e.u_names]
    x_positions = [algebra.index(x) for x in e.basis]
    return [
        monomial
        for monomial in algebra.monomials_of_degree(degree)
        if any(monomial[p] for p in u_positions) or any(monomial[p] > 1 for p in x_positions)
    ]


def lift_class(e: EllipticExtension, A: QuotientAlgebra, representative: Element) -> Element:
    """
    A cocycle α of ΛW with φ(α) equal to the given cocycle of A.

    The naive lift is corrected by an element of ker φ, which is acyclic.
    """
    if not A.is_cocycle(representative):
        raise StructuralError(f"{representative} is not a cocycle of A")
    source = e.extension
    lifted = A.algebra.embed(representative, source.algebra)
    error = source.d(lifted)
    if error:
        correction = solve_coboundary(
            source, -error, _kernel_monomials(e, representative.degree)
        )
        if correction is None:
            raise ConstructionError(f"No ker φ correction lifts {representative}")
        lifted = lifted + correction
    if not source.is_cocycle(lifted) or A.phi(lifted) != representative:
        raise ConstructionError(f"Lift of {representative} failed")
    return lifted


# ---------------------------------------------------------- odd cuplength
def odd_difference_identity(
    square: TensorSquare, subset: Sequence[str], names: Sequence[str] | None = None
) -> bool:
    """Check ∏(y_l − y'_l)·y_J = ∏(y_l − y'_l)·y'_J for the odd ``names``."""
    names = tuple(square.source.odd_generators if names is None else names)
    if not set(subset) <= set(names):
        raise StructuralError(f"{list(subset)} is not a subset of {list(names)}")
    algebra = square.source.algebra
    differences = square.square.algebra.one
    for name in names:
        differences = differences * square.zero_divisor(name)
    word = algebra.product_of(subset)
    return differences * square.left(word) == differences * square.right(word)


def difference_scaling_check(A: QuotientAlgebra, classes: Sequence[Element]) -> bool:
    """
    Check Ω_A·∏(z_k − z'_k) = 2^r·Ω_A·∏z_k in A ⊗ A' for cocycles z_k of odd
    word-length in the x's.
    """
    square = tensor_square(A)
    omega = square.square.algebra.one
    for name in (*A.x_names, *A.y_names):
        omega = omega * square.zero_divisor(name)
    differences = omega
    plain = omega
    for z in classes:
        differences = differences * square.difference(z)
        plain = plain * square.left(z)
    return differences == plain * 2 ** len(classes)


def cuplength_certificate(
    m: SullivanModel,
    basis: Sequence[str] | None = None,
    classes: Sequence[CohomologyClass] = (),
    *,
    table: CohomologyTable | None = None,
) -> WitnessCertificate:
    """
    Ω·∏(α_k − α'_k)·α̂ for classes z_1..z_r of H_{odd,*}(A) with non-zero product.

    Parameters
    ----------
    m : SullivanModel
        Pure coformal model; ΛW is built by adjoining u's for ``basis``.
    basis : Sequence[str], optional
        Ordering of the even generators.
    classes : Sequence[CohomologyClass]
        Classes of ``table`` (bigraded cohomology of A).
    table : CohomologyTable, optional
        Bigraded table of A; computed when omitted.

    Raises
    ------
    NotComputableError
        If the classes are not odd or their product vanishes.
    """
    e = elliptic_extension(m, basis)
    setting = _setting(e)
    A = setting.A
    table = table or bigraded_cohomology(A)
    if not classes:
        raise NotComputableError("not a valid odd-cuplength witness: no classes")
    product = classes[0]
    for cls in classes:
        key = table.bidegree(cls)
        if key is None or key[0] % 2 == 0:
            raise NotComputableError("not a valid odd-cuplength witness: even class")
    for cls in classes[1:]:
        product = table.cup(product, cls)
    if product.is_zero:
        raise NotComputableError("not a valid odd-cuplength witness")

    dual = poincare_dual(table, product)
    representatives = [table.representative(cls) for cls in classes]
    if not difference_scaling_check(A, representatives):
        raise ConstructionError("Ω_A·∏(z − z') differs from 2^r·Ω_A·∏z")

    omega = setting.omega_block
    blocks = [omega]
    image = setting.image(omega.element)
    for k, z in enumerate(representatives, start=1):
        alpha = lift_class(e, A, z)
        difference = setting.source.difference(alpha)
        blocks.append(WitnessBlock(f"difference_{k}", difference, (KernelTerm(QQ.one, (difference,)),)))
        image = image * setting.target.difference(z)
    dual_lift = setting.source.left(lift_class(e, A, table.representative(dual)))
    blocks.append(WitnessBlock("dual", dual_lift, (KernelTerm(QQ.one, (), dual_lift),)))
    image = image * setting.target.left(table.representative(dual))

    for block in blocks[1:-1]:
        setting.check_block(block)
    scalar = setting.top_scalar(image)
    if abs(scalar) != 2 ** len(classes):
        raise ConstructionError(f"Cuplength witness scalar {scalar} is not ±2^{len(classes)}")
    return WitnessCertificate("cuplength", e, tuple(blocks), image, scalar, _adjoined(e))


# ---------------------------------------------------------- single odd
def _single_odd(setting: _Setting) -> tuple[Element, WitnessBlock]:
    e = setting.e
    if e.m != 1:
        raise NotComputableError(f"The single-odd construction needs m = 1, got m = {e.m}")
    (y,) = e.y_names
    alpha, beta = _quadratic_part(e, y)
    basis = e.basis

    # ỹ = y − Σ α_k u_k removes the square terms of dy
    y_tilde = setting.generator(y)
    for x, a in alpha.items():
        y_tilde = y_tilde - setting.generator(e.u_of(x)) * a
    Yt = setting.source.difference(y_tilde)
    X = {x: setting.difference(x) for x in basis}
    Xp = {x: setting.primed(x) for x in basis}
    U = {x: setting.difference(e.u_of(x)) for x in basis}
    Up = {x: setting.primed(e.u_of(x)) for x in basis}

    def pi(*skip: str) -> tuple[Element, ...]:
        return tuple(X[x] for x in basis if x not in skip)

    theta = [KernelTerm(QQ.one, pi(), setting.source.right(y_tilde))]
    theta += [KernelTerm(HALF, (*pi(l), Yt), Xp[l]) for l in basis]
    theta_hat = []
    for (i, j), a in beta.items():
        theta_hat += [
            KernelTerm(a * HALF, (*pi(i, j), U[j], X[i]), Xp[i]),
            KernelTerm(a * HALF, (*pi(i, j), U[i], X[j]), Xp[j]),
            KernelTerm(a * HALF, (*pi(i, j), X[j], X[j]), Up[i]),
            KernelTerm(a * HALF, (*pi(i, j), X[i], X[i]), Up[j]),
        ]
        for l in basis:
            if l in (i, j):
                continue
            theta_hat += [
                KernelTerm(a * QUARTER, (*pi(i, j, l), X[i], X[i], U[j]), Xp[l]),
                KernelTerm(a * QUARTER, (*pi(i, j, l), X[j], X[j], U[i]), Xp[l]),
            ]

    terms = tuple(theta + [t.negated() for t in theta_hat])
    beta_block = WitnessBlock("beta", setting.algebra.zero, terms)
    beta_block = WitnessBlock("beta", beta_block.expanded(), terms)
    setting.check_block(beta_block)

    gamma = setting.algebra.zero
    for term in theta_hat:
        gamma = gamma + term.value()
    for term in theta[1:]:
        gamma = gamma - term.value()

    expected = setting.target.square.algebra.zero
    for l in basis:
        piece = setting.target.right(setting.A.algebra.generator(l))
        for x in basis:
            if x != l:
                piece = piece * setting.target.zero_divisor(x)
        expected = expected + piece * setting.target.zero_divisor(y) * (-HALF)
    if setting.image(gamma) != expected:
        raise ConstructionError("(φ⊗φ)(γ) differs from −½Σ x'_l π⟨l⟩(y − y')")
    return gamma, beta_block


def single_odd_beta(e: EllipticExtension) -> tuple[Element, Element]:
    """
    The pair (γ, β) for ΛW = Λ(x_i, u_i, y) with a single odd y.

    β = π⟨0⟩ỹ' − γ is a cocycle of (ker μ)^n, where π⟨S⟩ is the product of
    the x_k − x'_k with k outside S and ỹ removes the square terms of dy.

    Raises
    ------
    NotComputableError
        If ΛW has more or fewer than one odd generator besides the u's.
    """
    gamma, block = _single_odd(_setting(e))
    return gamma, block.element


def single_odd_certificate(e: EllipticExtension) -> WitnessCertificate:
    """Ω·β, of power 2n + 1, with scalar ±2^n."""
    setting = _setting(e)
    _, beta = _single_odd(setting)
    omega = setting.omega_block
    image = setting.image(omega.element) * setting.image(beta.element)
    scalar = setting.top_scalar(image)
    if abs(scalar) != 2**e.n:
        raise ConstructionError(f"Single-odd scalar {scalar} is not ±2^{e.n}")
    logger.info(f"Single-odd certificate of power {omega.power + beta.power}")
    return WitnessCertificate("single-odd", e, (omega, beta), image, scalar, _adjoined(e))


# ---------------------------------------------------------- split family
def _split_conditions(e: EllipticExtension, y1: str, xn: str) -> str | None:
    algebra = e.extension.algebra
    position = algebra.index(xn)
    if y1 not in e.y_names or xn not in e.basis:
        return f"({y1}, {xn}) does not name an odd generator and a basis element"
    if any(monomial[position] for monomial in e.extension.derivation.image(y1).terms):
        return f"d({y1}) involves {xn}"
    for y in e.y_names:
        if y == y1:
            continue
        for monomial in e.extension.derivation.image(y).terms:
            if not monomial[position] or sum(monomial) != 2:
                return f"d({y}) is not {xn} times a linear form"
    return None


def detect_split_partition(e: EllipticExtension) -> tuple[str, str] | None:
    """First (y_1, x_n) satisfying the split-family conditions, if any."""
    if e.m < 2:
        return None
    for y1 in e.y_names:
        for xn in e.basis:
            if _split_conditions(e, y1, xn) is None:
                return y1, xn
    return None


def split_family_certificate(
    e: EllipticExtension, partition: tuple[str, str] | None = None
) -> WitnessCertificate:
    """
    Ω·β₁·(ζ − ζ') with ζ = x_n y_2⋯y_m − ε, of power 2n + m.

    β₁ is the single-odd cocycle of the sub-extension on x_1..x_{n−1}, y_1
    and ε ∈ ker φ makes ζ a cocycle.

    Raises
    ------
    NotComputableError
        If no partition satisfies dy_1 ∈ Λ(x_1..x_{n−1}) and dy_j ∈ x_n·X.
    """
    if e.m < 2:
        raise NotComputableError("The split family needs at least two odd generators")
    partition = partition or detect_split_partition(e)
    if partition is None:
        raise NotComputableError("No (y_1, x_n) satisfies the split-family conditions")
    y1, xn = partition
    reason = _split_conditions(e, y1, xn)
    if reason:
        raise NotComputableError(reason)

    setting = _setting(e)
    sub = sub_extension(e, [x for x in e.basis if x != xn], [y1])
    sub_setting = _setting(sub)
    _, sub_beta = _single_odd(sub_setting)
    terms = tuple(t.transported(setting.algebra) for t in sub_beta.terms)
    beta1 = WitnessBlock(
        "beta_1", sub_setting.algebra.embed(sub_beta.element, setting.algebra), terms
    )

    others = [y for y in e.y_names if y != y1]
    z = setting.generator(xn) * e.extension.algebra.product_of(others)
    error = e.extension.d(z)
    zeta = z
    if error:
        epsilon = solve_coboundary(e.extension, error, _kernel_monomials(e, z.degree))
        if epsilon is None:
            raise ConstructionError(f"No ε in ker φ with dε = d({z})")
        zeta = z - epsilon
    tail_element = setting.source.difference(zeta)
    tail = WitnessBlock("tail", tail_element, (KernelTerm(QQ.one, (tail_element,)),))

    for block in (beta1, tail):
        setting.check_block(block)
    omega = setting.omega_block
    image = (
        setting.image(omega.element)
        * setting.image(beta1.element)
        * setting.image(tail.element)
    )
    scalar = setting.top_scalar(image)
    if abs(scalar) != 2**e.n:
        raise ConstructionError(f"Split-family scalar {scalar} is not ±2^{e.n}")
    logger.info(f"Split-family certificate for ({y1}, {xn})")
    return WitnessCertificate(
        "split-family",
        e,
        (omega, beta1, tail),
        image,
        scalar,
        _adjoined(e),
        notes=(f"partition y1={y1} xn={xn}",),
    )


def auto_certificates(m: SullivanModel) -> list[WitnessCertificate]:
    """
    Certificates whose hypotheses hold structurally for ``m``.

    A model already shaped like an elliptic extension is used as is;
    otherwise u's are adjoined for the declared even generators.
    """
    if not (m.is_pure and m.is_coformal) or not m.algebra.generators:
        logger.debug(f"{m!r}: no structural certificate applies")
        return []
    e = recognize_extension(m) or elliptic_extension(m)
    found = []
    builders = (
        ("omega", diagonal_certificate),
        ("single-odd", single_odd_certificate),
        ("split-family", split_family_certificate),
    )
    for name, build in builders:
        try:
            found.append(build(e))
        except NotComputableError as exc:
            logger.debug(f"{name} certificate skipped: {exc}")
    return found
