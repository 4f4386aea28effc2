# src/sullivan_tc/model_file.py
"""
Line-oriented model files.

A file declares generators, their differentials and optional blocks that steer
the bound computations::

    # Example: dy3 = x1 x2
    gen x1 4
    gen x2 6
    gen y1 odd
    d y1 = x1^2
    basis x2 x1
    transform x1 = x1 + 1/2*x2
    formal
    family single-odd

Odd generators are parsed as non-commutative sympy symbols, so the order in which
they are written fixes the Koszul sign of a term.
"""

__all__ = [
    "ModelFile",
    "format_model",
    "load_model_file",
    "parse_element",
    "parse_model",
    "parse_text",
]

from dataclasses import dataclass, field
from logging import getLogger
from pathlib import Path
from tokenize import TokenError
from typing import Any

import regex
from sympy import Add, Expr, Pow, Symbol, expand
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from .config import DEFAULTS
from .errors import InvalidModelError, ModelFileError
from .gca import Element, Generator, GradedAlgebra, to_rational
from .invar import BoundOptions
from .model import SullivanModel, validate

logger = getLogger(__name__)

_TRANSFORMATIONS = (*standard_transformations, convert_xor)

_DIRECTIVES = {
    "gen": regex.compile(r"gen\s+(?P<name>\S+)\s+(?P<degree>\S+)\s*$"),
    "default": regex.compile(r"default\s+even\s+(?P<degree>\S+)\s*$"),
    "d": regex.compile(r"d\s+(?P<name>\S+)\s*=\s*(?P<expr>.*?)\s*$"),
    "basis": regex.compile(r"basis(?P<names>(?:\s+\S+)+)\s*$"),
    "transform": regex.compile(r"transform\s+(?P<name>\S+)\s*=\s*(?P<expr>.*?)\s*$"),
    "formal": regex.compile(r"formal\s*$"),
    "family": regex.compile(r"family\s+(?P<kind>\S+)(?P<args>(?:\s+\S+)*)\s*$"),
}
_KEYWORD = regex.compile(r"\s*(?P<keyword>\S+)")
_NAME = regex.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass
class ModelFile:
    """A parsed model together with its optional blocks."""

    model: SullivanModel
    bases: list[tuple[str, ...]] = field(default_factory=list)
    transform: tuple[tuple[Any, ...], ...] | None = None
    formal: bool = False
    families: list[tuple[str, ...]] = field(default_factory=list)
    path: Path | None = None

    def bound_options(self, **overrides: Any) -> BoundOptions:
        settings: dict[str, Any] = {
            "bases": tuple(self.bases) or (None,),
            "transforms": (self.transform,) if self.transform else (),
            "assume_formal": self.formal,
        }
        settings.update(overrides)
        return BoundOptions(**settings)


@dataclass
class _Declaration:
    name: str
    degree: int | None
    parity: str | None
    line: int
    column: int


@dataclass
class _Pending:
    name: str
    expression: Expr
    line: int
    column: int


def _symbols(declarations: dict[str, _Declaration]) -> dict[str, Symbol]:
    return {
        name: Symbol(name, commutative=decl.parity != "odd")
        for name, decl in declarations.items()
    }


def _sympify(text: str, symbols: dict[str, Symbol], line: int, column: int) -> Expr:
    if not text:
        raise ModelFileError("Missing expression", line, column)
    try:
        expression = parse_expr(text, local_dict=dict(symbols), transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, TokenError) as exc:
        raise ModelFileError(f"Cannot parse {text!r}: {exc}", line, column) from exc
    if not isinstance(expression, Expr):
        raise ModelFileError(f"{text!r} is not a polynomial", line, column)
    for symbol in expression.free_symbols:
        if symbol.name not in symbols:
            found = regex.search(rf"(?<![A-Za-z0-9_]){regex.escape(symbol.name)}\b", text)
            offset = found.start() if found else 0
            raise ModelFileError(f"Unknown generator {symbol.name!r}", line, column + offset)
    return expand(expression)


def _terms(expression: Expr, line: int, column: int) -> list[tuple[Any, list[tuple[str, int]]]]:
    """Split an expanded polynomial into (coefficient, [(name, exponent), ...])."""
    terms = []
    for term in Add.make_args(expression):
        if term == 0:
            continue
        coefficient, factors = term.as_coeff_mul()
        if not coefficient.is_Rational:
            raise ModelFileError(f"Coefficient {coefficient} is not rational", line, column)
        powers = []
        for factor in factors:
            if isinstance(factor, Symbol):
                powers.append((factor.name, 1))
            elif (
                isinstance(factor, Pow)
                and isinstance(factor.base, Symbol)
                and factor.exp.is_Integer
                and factor.exp > 0
            ):
                powers.append((factor.base.name, int(factor.exp)))
            else:
                raise ModelFileError(f"{term} is not a polynomial term", line, column)
        terms.append((coefficient, powers))
    return terms


def _to_element(
    algebra: GradedAlgebra, expression: Expr, line: int, column: int
) -> Element:
    result = algebra.zero
    for coefficient, powers in _terms(expression, line, column):
        term = algebra.one * to_rational(coefficient)
        for name, exponent in powers:
            for _ in range(exponent):
                term = term * algebra.generator(name)
        result = result + term
    return result


def parse_element(algebra: GradedAlgebra, text: str) -> Element:
    """Parse a polynomial in the generators of ``algebra``."""
    symbols = {g.name: Symbol(g.name, commutative=g.is_even) for g in algebra.generators}
    return _to_element(algebra, _sympify(text.strip(), symbols, 1, 1), 1, 1)


def _term_degree(powers: list[tuple[str, int]], degrees: dict[str, int]) -> int | None:
    total = 0
    for name, exponent in powers:
        if name not in degrees:
            return None
        total += exponent * degrees[name]
    return total


def _resolve_degrees(
    declarations: dict[str, _Declaration], pending: dict[str, _Pending], default_even: int
) -> dict[str, int]:
    """Fill in unspecified degrees, forcing odd ones from their differentials."""
    degrees: dict[str, int] = {}
    for name, decl in declarations.items():
        if decl.degree is not None:
            degrees[name] = decl.degree
        elif decl.parity == "even":
            degrees[name] = default_even

    progress = True
    while progress:
        progress = False
        for name, item in pending.items():
            if name in degrees:
                continue
            for _, powers in _terms(item.expression, item.line, item.column):
                degree = _term_degree(powers, degrees)
                if degree is not None:
                    degrees[name] = degree - 1
                    progress = True
                    break
    for name in declarations:
        degrees.setdefault(name, 2 * default_even - 1)

    for name, decl in declarations.items():
        degree = degrees[name]
        if degree < 1 or (decl.parity == "odd" and degree % 2 == 0):
            raise ModelFileError(
                f"Generator {name!r} gets degree {degree}, not a positive odd degree",
                decl.line,
                decl.column,
            )
    return degrees


def _check_degrees(item: _Pending, degrees: dict[str, int]) -> None:
    expected = degrees[item.name] + 1
    for _, powers in _terms(item.expression, item.line, item.column):
        degree = _term_degree(powers, degrees)
        if degree != expected:
            raise ModelFileError(
                f"d({item.name}) must have degree {expected}, found a term of degree {degree}",
                item.line,
                item.column,
            )


def parse_text(text: str, name: str = "") -> ModelFile:
    """
    Parse the contents of a model file.

    Raises
    ------
    ModelFileError
        On syntax errors, unknown or duplicate generators, degree mismatches and
        differentials with d² ≠ 0.
    """
    declarations: dict[str, _Declaration] = {}
    pending: dict[str, _Pending] = {}
    basis_lines: list[tuple[int, int, tuple[str, ...]]] = []
    transform_lines: list[tuple[int, int, str, str]] = []
    families: list[tuple[int, int, tuple[str, ...]]] = []
    default_even = DEFAULTS["default_even_degree"]
    formal = False

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        keyword = _KEYWORD.match(line)
        start = keyword.start("keyword")
        pattern = _DIRECTIVES.get(keyword["keyword"])
        if pattern is None:
            raise ModelFileError(f"Unknown directive {keyword['keyword']!r}", number, start + 1)
        match = pattern.match(line, start)
        if match is None:
            raise ModelFileError(f"Malformed {keyword['keyword']!r} line", number, start + 1)

        directive = keyword["keyword"]
        if directive == "gen":
            gen_name, spec = match["name"], match["degree"]
            column = match.start("name") + 1
            if not _NAME.fullmatch(gen_name):
                raise ModelFileError(f"Invalid generator name {gen_name!r}", number, column)
            if gen_name in declarations:
                raise ModelFileError(f"Duplicate generator {gen_name!r}", number, column)
            if spec in ("even", "odd"):
                declarations[gen_name] = _Declaration(gen_name, None, spec, number, column)
            elif spec.isdigit() and int(spec) > 0:
                degree = int(spec)
                parity = "odd" if degree % 2 else "even"
                declarations[gen_name] = _Declaration(gen_name, degree, parity, number, column)
            else:
                raise ModelFileError(
                    f"Degree must be a positive integer, 'even' or 'odd', got {spec!r}",
                    number,
                    match.start("degree") + 1,
                )
        elif directive == "default":
            if not match["degree"].isdigit() or int(match["degree"]) % 2:
                raise ModelFileError(
                    "The default even degree must be an even integer",
                    number,
                    match.start("degree") + 1,
                )
            default_even = int(match["degree"])
        elif directive == "d":
            target = match["name"]
            if target not in declarations:
                raise ModelFileError(f"Unknown generator {target!r}", number, match.start("name") + 1)
            if target in pending:
                raise ModelFileError(
                    f"Duplicate differential for {target!r}", number, match.start("name") + 1
                )
            column = match.start("expr") + 1
            expression = _sympify(match["expr"], _symbols(declarations), number, column)
            pending[target] = _Pending(target, expression, number, column)
        elif directive == "basis":
            names = tuple(match["names"].split())
            basis_lines.append((number, match.start("names") + 2, names))
        elif directive == "transform":
            transform_lines.append(
                (number, match.start("name") + 1, match["name"], match["expr"])
            )
        elif directive == "formal":
            formal = True
        elif directive == "family":
            kind = match["kind"]
            args = tuple(match["args"].split())
            if (kind, len(args)) not in (("single-odd", 0), ("split", 2)):
                raise ModelFileError(
                    "Expected 'family single-odd' or 'family split <y1> <xn>'",
                    number,
                    match.start("kind") + 1,
                )
            families.append((number, match.start("kind") + 1, (kind, *args)))

    degrees = _resolve_degrees(declarations, pending, default_even)
    for item in pending.values():
        _check_degrees(item, degrees)

    algebra = GradedAlgebra(Generator(n, degrees[n]) for n in declarations)
    images = {
        target: _to_element(algebra, item.expression, item.line, item.column)
        for target, item in pending.items()
    }
    model = SullivanModel(algebra, images, name)
    try:
        validate(model)
    except InvalidModelError as exc:
        item = pending.get(exc.generator) if exc.generator else None
        line, column = (item.line, item.column) if item else (None, None)
        raise ModelFileError(str(exc), line, column) from exc

    evens = model.even_generators
    bases = []
    for number, column, names in basis_lines:
        if sorted(names) != sorted(evens) or len(set(names)) != len(names):
            raise ModelFileError(
                f"Basis {list(names)} is not an ordering of the even generators {list(evens)}",
                number,
                column,
            )
        bases.append(names)

    transform = _transform_matrix(model, transform_lines) if transform_lines else None

    family_specs = []
    for number, column, spec in families:
        if spec[0] == "split":
            y1, xn = spec[1:]
            if y1 not in model.odd_generators or xn not in evens:
                raise ModelFileError(
                    f"'family split' needs an odd and an even generator, got {y1}, {xn}",
                    number,
                    column,
                )
        family_specs.append(spec)

    logger.debug(f"Parsed model {name or '<text>'} with {len(declarations)} generators")
    return ModelFile(model, bases, transform, formal, family_specs)


def _transform_matrix(
    model: SullivanModel, lines: list[tuple[int, int, str, str]]
) -> tuple[tuple[Any, ...], ...]:
    """Rows of the change of basis; generators without a line keep their row."""
    evens = model.even_generators
    symbols = {n: Symbol(n) for n in evens}
    rows = {x: [1 if x == y else 0 for y in evens] for x in evens}
    seen: set[str] = set()
    for number, column, target, text in lines:
        if target not in rows:
            raise ModelFileError(f"{target!r} is not an even generator", number, column)
        if target in seen:
            raise ModelFileError(f"Duplicate transform for {target!r}", number, column)
        seen.add(target)
        expression = _sympify(text, symbols, number, column)
        row = [0] * len(evens)
        for coefficient, powers in _terms(expression, number, column):
            if len(powers) != 1 or powers[0][1] != 1:
                raise ModelFileError(f"Transform of {target!r} must be linear", number, column)
            row[evens.index(powers[0][0])] += to_rational(coefficient)
        rows[target] = row
    return tuple(tuple(to_rational(v) for v in rows[x]) for x in evens)


def load_model_file(path: str | Path) -> ModelFile:
    """Read and parse a model file; the model is named after the file stem."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFileError(f"Cannot read {path}: {exc.strerror or exc}") from exc
    parsed = parse_text(text, path.stem)
    parsed.path = path
    logger.info(f"Loaded {path.name}: {parsed.model.algebra!r}")
    return parsed


def parse_model(path: str | Path) -> SullivanModel:
    return load_model_file(path).model


def format_model(model_file: ModelFile) -> str:
    """Serialise a parsed model file; parsing the output gives back the same model."""
    model = model_file.model
    lines = []
    if model.name:
        lines.append(f"# {model.name}")
    for generator in model.algebra.generators:
        lines.append(f"gen {generator.name} {generator.degree}")
    for name in model.algebra.names:
        image = model.differential.get(name)
        if image:
            lines.append(f"d {name} = {image}")
    for basis in model_file.bases:
        lines.append("basis " + " ".join(basis))
    if model_file.transform:
        evens = model.even_generators
        for target, row in zip(evens, model_file.transform, strict=True):
            pieces = [
                f"{value}*{source}"
                for source, value in zip(evens, row, strict=True)
                if value
            ]
            lines.append(f"transform {target} = " + " + ".join(pieces))
    if model_file.formal:
        lines.append("formal")
    for family in model_file.families:
        lines.append("family " + " ".join(family))
    return "\n".join(lines) + "\n"

