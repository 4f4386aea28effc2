# src/sullivan_tc/cli.py
"""
Command-line front end.

Every subcommand reads one model file and prints a flat ``key = value``
document with dotted keys (``--text`` prints a short human summary instead).
The exit code tells validation failures (1), honest refusals (2) and internal
check failures (3) apart.
"""

__all__ = ["COMMANDS", "CONSTRUCTION_NAMES", "CommandResult", "build_parser", "main", "run"]

import argparse
import sys
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from logging import getLogger
from pathlib import Path
from typing import Any

from .cohom import bigraded_cohomology, cohomology, poincare_polynomial
from .config import setup_logging
from .errors import (
    ConstructionError,
    InvalidModelError,
    ModelFileError,
    NotComputableError,
    StructuralError,
)
from .invar import (
    cat_pure,
    cuplength,
    odd_cuplength_sweep,
    tc_bounds,
    zero_divisor_cuplength,
)
from .model import (
    Ellipticity,
    chi_pi,
    elliptic_extension,
    formal_dimension,
    is_elliptic,
    quotient_A,
    recognize_extension,
    validate,
)
from .model_file import ModelFile, load_model_file
from .witness import (
    CONSTRUCTIONS,
    WitnessCertificate,
    cuplength_certificate,
    diagonal_certificate,
    single_odd_certificate,
    split_family_certificate,
)

logger = getLogger(__name__)

COMMANDS = ("validate", "cohomology", "invariants", "bounds", "witness", "report")

# Construction names on the command line and in report keys.
CONSTRUCTION_NAMES = {
    "omega": "omega",
    "theorem51": "cuplength",
    "theorem53": "single-odd",
    "family4": "split-family",
}
REPORT_NAMES = {builder: name for name, builder in CONSTRUCTION_NAMES.items()}
CONSTRUCTION_CHOICES = tuple(dict.fromkeys([*CONSTRUCTION_NAMES, *CONSTRUCTIONS]))

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NOT_COMPUTABLE = 2
EXIT_INTERNAL = 3


@dataclass
class CommandResult:
    exit_code: int
    entries: list[tuple[str, Any]] = field(default_factory=list)
    text: str = ""

    def get(self, key: str, default: Any = None) -> Any:
        for name, value in self.entries:
            if name == key:
                return value
        return default


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return str(value)


def render(entries: Sequence[tuple[str, Any]]) -> str:
    return "".join(f"{key} = {_format_value(value)}\n" for key, value in entries)


# ------------------------------------------------------------------ commands
def _validate(parsed: ModelFile, flags: Mapping[str, Any]) -> list[tuple[str, Any]]:
    m = parsed.model
    report = validate(m)
    entries: list[tuple[str, Any]] = [
        ("model.name", m.name),
        ("model.generators", list(m.algebra.names)),
        ("model.degrees", [g.degree for g in m.algebra.generators]),
        ("model.even", list(m.even_generators)),
        ("model.odd", list(m.odd_generators)),
        ("model.pure", report.pure),
        ("model.coformal", report.coformal),
        ("model.minimal", report.minimal),
        ("model.word_length", report.word_length),
        ("model.chi_pi", chi_pi(m)),
    ]
    if report.pure:
        entries.append(("model.elliptic", is_elliptic(m).value))
        recognized = recognize_extension(m)
        entries.append(("model.extension_shape", recognized is not None))
    entries.extend((f"model.message.{k}", msg) for k, msg in enumerate(report.messages, 1))
    return entries


def _cohomology(parsed: ModelFile, flags: Mapping[str, Any]) -> list[tuple[str, Any]]:
    m = parsed.model
    if flags.get("bigraded"):
        basis = parsed.bases[0] if parsed.bases else None
        A = quotient_A(elliptic_extension(m, basis))
        table = bigraded_cohomology(A)
        entries: list[tuple[str, Any]] = [
            ("cohomology.A.dimension", A.dimension),
            ("cohomology.A.top_degree", A.top_degree),
        ]
        counts: dict[tuple[int, int], int] = {}
        for degree in range(table.max_degree + 1):
            for cls in table.basis(degree):
                key = table.bidegree(cls)
                counts[key] = counts.get(key, 0) + 1
        for (p, q), count in sorted(counts.items()):
            entries.append((f"cohomology.H.{p}.{q}", count))
        entries.append(("cohomology.odd_dimension", len(table.odd_classes())))
        return entries

    table = cohomology(m, flags.get("max_degree"))
    entries = [("cohomology.max_degree", table.max_degree)]
    entries.extend((f"cohomology.H.{n}", b) for n, b in poincare_polynomial(table).items())
    entries.append(("cohomology.total_dimension", table.total_dimension))
    return entries


def _require_elliptic(parsed: ModelFile) -> None:
    m = parsed.model
    validate(m)
    if not m.is_pure:
        raise NotComputableError(f"{m!r} is not pure")
    verdict = is_elliptic(m)
    if verdict is not Ellipticity.YES:
        raise NotComputableError(f"Ellipticity of {m!r} is {verdict.value}")


def _invariants(parsed: ModelFile, flags: Mapping[str, Any]) -> list[tuple[str, Any]]:
    _require_elliptic(parsed)
    m = parsed.model
    entries: list[tuple[str, Any]] = [
        ("invariants.chi_pi", chi_pi(m)),
        ("invariants.formal_dimension", formal_dimension(m)),
    ]
    table = cohomology(m)
    entries.append(("invariants.cuplength", cuplength(table)))
    entries.append(("invariants.zero_divisor_cuplength", zero_divisor_cuplength(m)))
    try:
        category = cat_pure(m)
        entries.append(("invariants.category", category.value))
        entries.append(("invariants.category.method", category.method))
    except NotComputableError as exc:
        entries.append(("invariants.category", "n/a"))
        entries.append(("invariants.category.reason", str(exc)))
    if m.is_coformal:
        options = parsed.bound_options()
        sweep = odd_cuplength_sweep(m, options.bases, options.transforms)
        for label, value in sweep.values.items():
            entries.append((f"invariants.odd_cuplength.{label}", value))
        entries.append(("invariants.odd_cuplength", sweep.value))
    else:
        entries.append(("invariants.odd_cuplength", "n/a"))
    return entries


def _source_key(source: str) -> str:
    if source.startswith("certificate:"):
        construction = source.split(":", 1)[1]
        return REPORT_NAMES.get(construction, construction)
    return source


def _bounds(parsed: ModelFile, flags: Mapping[str, Any]) -> list[tuple[str, Any]]:
    overrides = {}
    if flags.get("no_witnesses"):
        overrides["with_witnesses"] = False
    report = tc_bounds(parsed.model, parsed.bound_options(**overrides))
    lower: dict[str, int] = {}
    for bound in report.lower:
        key = _source_key(bound.source)
        lower[key] = max(lower.get(key, bound.value), bound.value)
    upper: dict[str, int] = {}
    for bound in report.upper:
        key = _source_key(bound.source)
        upper[key] = min(upper.get(key, bound.value), bound.value)
    entries: list[tuple[str, Any]] = []
    entries.extend((f"bounds.lower.{k}", v) for k, v in lower.items())
    entries.extend((f"bounds.upper.{k}", v) for k, v in upper.items())
    entries.append(("bounds.interval", list(report.interval)))
    entries.append(("bounds.exact", report.exact))
    entries.append(("bounds.consistent", report.consistent))
    entries.extend((f"bounds.note.{k}", note) for k, note in enumerate(report.notes, 1))
    return entries


def _default_construction(parsed: ModelFile) -> str:
    for family in parsed.families:
        if family[0] == "single-odd":
            return "single-odd"
        if family[0] == "split":
            return "split-family"
    return "omega"


def _build_certificate(parsed: ModelFile, construction: str) -> WitnessCertificate:
    m = parsed.model
    basis = parsed.bases[0] if parsed.bases else None
    if construction == "cuplength":
        options = parsed.bound_options()
        best = odd_cuplength_sweep(m, options.bases, options.transforms).best
        if best is None or best.extension is None or not best.value:
            raise NotComputableError("not a valid odd-cuplength witness: L = 0")
        return cuplength_certificate(
            best.extension.base, best.basis, best.classes, table=best.table
        )

    e = recognize_extension(m)
    if e is None or (basis is not None and e.basis != tuple(basis)):
        e = elliptic_extension(m, basis)
    if construction == "omega":
        return diagonal_certificate(e)
    if construction == "single-odd":
        return single_odd_certificate(e)
    partition = next((tuple(f[1:]) for f in parsed.families if f[0] == "split"), None)
    return split_family_certificate(e, partition)


def _witness(parsed: ModelFile, flags: Mapping[str, Any]) -> list[tuple[str, Any]]:
    _require_elliptic(parsed)
    requested = flags.get("construction") or _default_construction(parsed)
    construction = CONSTRUCTION_NAMES.get(requested, requested)
    if construction not in CONSTRUCTIONS:
        raise StructuralError(f"Unknown construction {construction!r}")
    certificate = _build_certificate(parsed, construction)
    entries: list[tuple[str, Any]] = [
        ("witness.construction", REPORT_NAMES[certificate.construction]),
        ("witness.extension.adjoined", certificate.adjoined),
        ("witness.extension.basis", list(certificate.extension.basis)),
        ("witness.blocks", [b.label for b in certificate.blocks]),
    ]
    for block in certificate.blocks:
        entries.append((f"witness.block.{block.label}.power", block.power))
        entries.append((f"witness.block.{block.label}.terms", len(block.terms)))
    entries.append(("witness.power", certificate.power))
    entries.append(("witness.scalar", certificate.scalar))
    entries.append(("witness.certified_lower_bound", certificate.certified_lower_bound))
    entries.extend((f"witness.note.{k}", n) for k, n in enumerate(certificate.notes, 1))
    return entries


def _report(parsed: ModelFile, flags: Mapping[str, Any]) -> list[tuple[str, Any]]:
    entries = _validate(parsed, flags)
    entries.extend(_invariants(parsed, flags))
    entries.extend(_bounds(parsed, flags))
    return entries


_HANDLERS = {
    "validate": _validate,
    "cohomology": _cohomology,
    "invariants": _invariants,
    "bounds": _bounds,
    "witness": _witness,
    "report": _report,
}


def _summary(command: str, name: str, result: CommandResult) -> str:
    lines = [f"{command} {name}"]
    interval = result.get("bounds.interval")
    if interval is not None:
        exact = " (exact)" if result.get("bounds.exact") else ""
        lines.append(f"  TC in [{interval[0]}, {_format_value(interval[1])}]{exact}")
    for key in ("model.pure", "model.coformal", "model.elliptic", "invariants.category",
                "witness.construction", "witness.certified_lower_bound"):
        value = result.get(key)
        if value is not None:
            lines.append(f"  {key.split('.', 1)[1]}: {_format_value(value)}")
    if result.exit_code:
        lines.append(f"  error: {result.get('error')}")
    return "\n".join(lines) + "\n"


def run(
    command: str, model_path: str | Path, flags: Mapping[str, Any] | None = None
) -> CommandResult:
    """
    Execute one subcommand against a model file.

    Parameters
    ----------
    command : str
        One of ``COMMANDS``.
    model_path : str | Path
        Model file to read.
    flags : Mapping[str, Any], optional
        Subcommand options (``max_degree``, ``bigraded``, ``construction``,
        ``no_witnesses``) and ``text`` for the human summary.

    Returns
    -------
    CommandResult
        Exit code, ordered entries and the rendered output.
    """
    flags = dict(flags or {})
    if command not in _HANDLERS:
        raise ValueError(f"Unknown command {command!r}; choose from {COMMANDS}")

    entries: list[tuple[str, Any]] = [("command", command)]
    try:
        parsed = load_model_file(model_path)
        entries.extend(_HANDLERS[command](parsed, flags))
        exit_code = EXIT_OK
    except (ModelFileError, InvalidModelError, StructuralError) as exc:
        logger.error(f"{command} {model_path}: {exc}")
        entries += [("error", str(exc)), ("error.kind", type(exc).__name__)]
        exit_code = EXIT_INVALID
    except NotComputableError as exc:
        logger.warning(f"{command} {model_path}: {exc}")
        entries += [("error", str(exc)), ("error.kind", type(exc).__name__)]
        exit_code = EXIT_NOT_COMPUTABLE
    except ConstructionError as exc:
        logger.exception(f"Internal check failed in {command} {model_path}")
        entries += [("error", str(exc)), ("error.kind", type(exc).__name__)]
        exit_code = EXIT_INTERNAL

    result = CommandResult(exit_code, entries)
    if flags.get("text"):
        result.text = _summary(command, Path(model_path).stem, result)
    else:
        result.text = render(entries)
    return result


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sullivan-tc",
        description="Rational topological complexity of pure Sullivan models.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("model", type=Path, help="Model file")
    common.add_argument("--text", action="store_true", help="Print a human summary")
    common.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")
    common.add_argument("--log-files", action="store_true", help="Also write dated log files")

    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("validate", parents=[common], help="Check d² = 0 and structural flags")
    cohom_parser = commands.add_parser("cohomology", parents=[common], help="Betti numbers")
    cohom_parser.add_argument("--max-degree", type=int, default=None)
    cohom_parser.add_argument(
        "--bigraded", action="store_true", help="Bigraded cohomology of the quotient algebra"
    )
    commands.add_parser("invariants", parents=[common], help="χ_π, cuplengths and category")
    bounds_parser = commands.add_parser("bounds", parents=[common], help="TC bounds")
    bounds_parser.add_argument(
        "--no-witnesses", action="store_true", help="Skip certificate constructions"
    )
    witness_parser = commands.add_parser("witness", parents=[common], help="Build a certificate")
    witness_parser.add_argument("--construction", choices=CONSTRUCTION_CHOICES, default=None)
    report_parser = commands.add_parser("report", parents=[common], help="Everything above")
    report_parser.add_argument("--no-witnesses", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(
        file_logging=args.log_files,
        console_level="DEBUG" if args.verbose else "WARNING",
    )
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "model")}
    result = run(args.command, args.model, flags)
    sys.stdout.write(result.text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
