"""Exception hierarchy.

Every error caused by an argument outside an operation's domain derives from
``DomainError``; the CLI maps those to exit code 2.  ``InconsistencyError``
signals that an exact identity failed to hold (exit code 3).
"""


class DomainError(ValueError):
    pass


class NotPrime(DomainError):
    pass


class EvenOrTooSmall(DomainError):
    pass


class WindowOutOfRange(DomainError):
    pass


class EllOutOfRange(DomainError):
    pass


class NonInvertibleMultiplier(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class JOutOfRange(DomainError):
    pass


class InvalidSubset(DomainError):
    pass


class BadRange(DomainError):
    pass


class DomainViolation(DomainError):
    pass


class TooLarge(DomainError):
    pass


class InconsistencyError(RuntimeError):
    pass
