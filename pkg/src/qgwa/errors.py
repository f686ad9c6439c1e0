"""Exception hierarchy shared by all modules."""


class QgwaError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(QgwaError, ZeroDivisionError):
    pass


class ZeroInput(QgwaError, ValueError):
    pass


class InvalidGaloisIndex(QgwaError, ValueError):
    pass


class InvalidParameter(QgwaError, ValueError):
    pass


class ZeroPolynomial(QgwaError, ValueError):
    pass


class NotInSubring(QgwaError, ValueError):
    pass


class IncompleteOrbit(QgwaError, ValueError):
    pass


class RootsNotInField(QgwaError, ValueError):
    """A binomial factor does not split into linear factors over the field."""


class MismatchedAlgebra(QgwaError, ValueError):
    pass


class InvalidAutomorphism(QgwaError, ValueError):
    pass


class GammaNotInCg(InvalidAutomorphism):
    pass


class InvalidI0(InvalidAutomorphism):
    pass


class OmegaRequiresQMinusOne(InvalidAutomorphism):
    pass


class LaurentMuInPolyBase(InvalidAutomorphism):
    pass


class InvalidGamma(InvalidAutomorphism):
    pass


class RequiresQMinusOne(InvalidAutomorphism):
    pass


class InfiniteOrder(QgwaError, ValueError):
    pass


class InfiniteOrderGenerator(InfiniteOrder):
    pass


class SymmetricDefiningPolynomial(QgwaError, ValueError):
    pass


class HypothesisViolated(QgwaError, ValueError):
    """A theorem hypothesis fails; ``reason`` is one of gcd, i0, subring, order, ..."""

    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or reason)


class LaurentBaseUnsupported(QgwaError, ValueError):
    pass


class VerificationFailed(QgwaError, AssertionError):
    """Brute-force check disagreed with a closed form.

    ``counterexample`` holds a short description of the first failure.
    """

    def __init__(self, message, counterexample=None):
        self.counterexample = counterexample
        super().__init__(message)


class CrossCheckMismatch(QgwaError, AssertionError):
    pass


class ParseError(QgwaError, ValueError):
    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class SemanticError(QgwaError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} at line {line}, column {column}"
        super().__init__(message)
