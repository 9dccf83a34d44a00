"""Exception types shared across the package."""


class LacunaryError(Exception):
    """Base class for errors raised by this package."""


class RingMismatchError(LacunaryError, TypeError):
    """Operands live over different coefficient rings."""


class InexactDivisionError(LacunaryError, ArithmeticError):
    """An exact division over the integers left a remainder."""


class MonomialInputError(LacunaryError, ValueError):
    """Perfect-power detection was asked about a single-term polynomial.

    Deciding whether x^n is a perfect power amounts to factoring n, which the
    detectors deliberately do not attempt.
    """


class PrimeSamplingError(LacunaryError, RuntimeError):
    """No admissible prime was found within the sampling budget."""


class CharacteristicError(LacunaryError, ValueError):
    """The field characteristic does not exceed the polynomial degree."""


class NotAPower(LacunaryError):
    """The input is provably not a perfect r-th power."""

    def __init__(self, reason, diagnostics=None):
        super().__init__(reason)
        self.reason = reason
        self.diagnostics = diagnostics


class SparsityCeilingExceeded(LacunaryError, RuntimeError):
    """An intermediate power grew past the configured term ceiling."""

    def __init__(self, terms, ceiling, diagnostics=None):
        super().__init__(
            f"intermediate power has {terms} terms, ceiling is {ceiling}")
        self.terms = terms
        self.ceiling = ceiling
        self.diagnostics = diagnostics


class PolyFileError(LacunaryError, ValueError):
    """Malformed or non-canonical polynomial file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
