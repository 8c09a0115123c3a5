"""Exception vocabulary shared by the whole library.

Contract violations (bad inputs, broken preconditions) derive from
ContractError; broken internal invariants derive from InternalCheckFailed.
The command line front end maps the former to exit code 2 and the latter
to exit code 1.
"""


class DicritError(Exception):
    """Base class of every error raised by this library."""


class ContractError(DicritError):
    """An input violated a documented precondition."""


class ParseError(ContractError):
    """Malformed field, element, polynomial or divisor text."""


class DescriptorMismatch(ContractError):
    """Operands live over different fields or variable systems."""


class DivisionByZero(ContractError, ZeroDivisionError):
    """Division by the zero element, polynomial or fraction."""


class ZeroPolynomial(ContractError):
    """The zero polynomial was passed where a nonzero one is required."""


class DegreeTooSmall(ContractError):
    """Requested homogenisation degree is below the total degree."""


class ConstantPolynomial(ContractError):
    """A nonconstant polynomial is required."""


class NotCoprime(ContractError):
    """Arguments share a nontrivial common factor."""


class NotOnLineD(ContractError):
    """The exponent pair does not lie on the supporting line of the edge."""


class ValueMismatch(ContractError):
    """Weighted values do not match the required normalisation v(z) = 0."""


class NotInValuationRing(ContractError):
    """The element has negative value and therefore no residue."""


class ReducibleMinimalPolynomial(ContractError):
    """A proposed minimal polynomial factors over its base field."""


class IrreducibilityUnverifiable(ContractError):
    """Irreducibility can neither be confirmed nor refuted at this capability."""


class InsufficientSamples(ContractError):
    """Too few, or repeated, sample points for a sound sampling verdict."""


class FactorizationUnsupported(ContractError):
    """A needed factorisation exceeds the declared capability.

    Carries the offending unfactored pieces so callers can report exactly
    what was missing instead of silently dropping points.
    """

    def __init__(self, message, unfactored=None):
        super().__init__(message)
        self.unfactored = tuple(unfactored or ())


class InternalCheckFailed(DicritError):
    """An internal invariant failed; this always indicates a bug."""


class DepthExceeded(InternalCheckFailed):
    """Blow-up recursion hit the safety cap although termination is guaranteed."""


class CorollaryViolation(InternalCheckFailed):
    """A residue that must admit a polynomial generator does not."""
