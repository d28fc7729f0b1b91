"""Exception hierarchy for the whole package.

Every failure mode raised by the library is a subclass of CRJetError, so
callers (and the CLI) can distinguish "bad input" from "not enough series
order" without string matching.
"""


class CRJetError(Exception):
    pass


# --- jet arithmetic ---

class SignatureMismatch(CRJetError):
    pass


class UnknownVariable(CRJetError):
    pass


class NonUnitConstantTerm(CRJetError):
    pass


class NonzeroConstantTermInImage(CRJetError):
    pass


class InsufficientValidOrder(CRJetError):
    pass


class NotSquare(CRJetError):
    pass


class SizeLimitExceeded(CRJetError):
    pass


class RaggedRows(CRJetError):
    pass


# --- expression parsing and manifold files ---

class ExpressionSyntaxError(CRJetError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class IndexOutOfRange(CRJetError):
    pass


class FormatError(CRJetError):
    pass


class RealityViolation(CRJetError):
    pass


class BasePointViolation(CRJetError):
    pass


# --- frame construction and Lie calculus ---

class IntegrabilityViolation(CRJetError):
    pass


class NonUnitDeterminant(CRJetError):
    pass


class OrderBudgetExceeded(CRJetError):
    def __init__(self, message, required_order=None):
        super().__init__(message)
        self.required_order = required_order


# --- nondegeneracy ---

class MissingFactoredForm(CRJetError):
    pass


class GammaConstraintViolated(CRJetError):
    pass


class ZeroJet(CRJetError):
    pass


# --- weight sequences ---

class InsufficientTerms(CRJetError):
    pass


class NegativeArgument(CRJetError):
    pass


class NoStopReached(CRJetError):
    pass


class EmptyGrid(CRJetError):
    pass
