# src/sullivan_tc/errors.py
"""Exception hierarchy shared by every module of the package."""

__all__ = [
    "ConstructionError",
    "InvalidModelError",
    "ModelFileError",
    "NotComputableError",
    "StructuralError",
    "SullivanError",
]


class SullivanError(Exception):
    """Base class for all errors raised by sullivan_tc."""


class StructuralError(SullivanError, ValueError):
    """Mismatched algebras, badly graded data or misuse of an operation."""


class InvalidModelError(SullivanError, ValueError):
    """A differential that does not square to zero."""

    def __init__(self, message: str, generator: str | None = None):
        super().__init__(message)
        self.generator = generator


class NotComputableError(SullivanError, ValueError):
    """The requested quantity lies outside what the tool can decide."""


class ConstructionError(SullivanError, RuntimeError):
    """A check that holds for every valid input failed, i.e. an implementation fault."""


class ModelFileError(SullivanError, ValueError):
    """Syntax or semantic error in a model file, located by line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")
