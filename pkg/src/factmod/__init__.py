"""Exact computations on the distribution of factorials modulo a prime."""

from factmod.errors import (
    BadRange,
    DomainError,
    DomainViolation,
    EllOutOfRange,
    EvenOrTooSmall,
    InconsistencyError,
    InvalidSubset,
    JOutOfRange,
    NonInvertibleMultiplier,
    NotPrime,
    OutOfRange,
    TooLarge,
    WindowOutOfRange,
)
from factmod.fieldcore import (
    PrimeContext,
    SequenceKind,
    Window,
    build_context,
    legendre,
    sequence_residues,
)

__version__ = "0.1.0"

__all__ = [
    "BadRange",
    "DomainError",
    "DomainViolation",
    "EllOutOfRange",
    "EvenOrTooSmall",
    "InconsistencyError",
    "InvalidSubset",
    "JOutOfRange",
    "NonInvertibleMultiplier",
    "NotPrime",
    "OutOfRange",
    "PrimeContext",
    "SequenceKind",
    "TooLarge",
    "Window",
    "WindowOutOfRange",
    "build_context",
    "legendre",
    "sequence_residues",
]
