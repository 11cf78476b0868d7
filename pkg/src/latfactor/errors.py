"""Exception types shared across the package.

Several of these are "success" signals: a shared factor surfaced while
inverting or reducing is exactly what a factoring routine wants to learn.
"""


class LatFactorError(Exception):
    """Base class for all package errors."""


class NotInvertible(LatFactorError):
    def __init__(self, g):
        super().__init__(f"not invertible, gcd={g}")
        self.g = g


class SharedFactor(LatFactorError):
    def __init__(self, g):
        super().__init__(f"modulus shares factor {g} with N")
        self.g = g


class UnsupportedSize(LatFactorError):
    pass


class ModulusMismatch(LatFactorError):
    pass


class DependentRows(LatFactorError):
    pass


class NonDivisibleCoordinates(LatFactorError):
    pass


class BoundTooLarge(LatFactorError):
    pass


class NoShortEnoughVector(LatFactorError):
    pass


class SearchExhausted(LatFactorError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class NotSemiprime(LatFactorError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial or []


class PromiseViolated(LatFactorError):
    pass


class NotOfForm(LatFactorError):
    pass
