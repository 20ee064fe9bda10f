"""
Engine exceptions
Every error carries the CLI exit code it maps to
"""


class RealBettiError(Exception):
    """Base class for all engine errors"""

    exit_code: int = 1

    @property
    def reason(self) -> str:
        """One-line, machine-parsable reason: '<ClassName>: <message>'"""
        return f"{type(self).__name__}: {self}"


# ==========================================
# VALIDATION ERRORS (exit code 2)
# ==========================================

class InputValidationError(RealBettiError, ValueError):
    """Input rejected before any computation"""

    exit_code = 2


class InvalidTopology(InputValidationError):
    """(g, a) outside 0 <= a <= g + 1"""


class InvalidInput(InputValidationError):
    """Parameters outside the domain of the recursion"""


class InvalidBundleType(InputValidationError):
    """Stiefel-Whitney vector incompatible with the degree"""


class NotAdmissible(InputValidationError):
    """No quaternionic bundle of this rank and degree exists"""


class NotCoprime(InputValidationError):
    """gcd(r, d) != 1"""


class UnsupportedRank(InputValidationError):
    """No closed form is available for this rank"""


class SlopeOrderViolation(InputValidationError):
    """Harder-Narasimhan slopes are not strictly decreasing"""


class InsufficientOrder(InputValidationError):
    """Truncation order too small for the requested operation"""


# ==========================================
# INTERNAL INCONSISTENCIES (exit code 3)
# ==========================================

class InternalInconsistency(RealBettiError, ArithmeticError):
    """A result contradicts an invariant; never expected on valid input"""

    exit_code = 3


class DivisorNotUnit(InternalInconsistency):
    """Series division by a series whose constant term is not +1 or -1"""


class TailNotZero(InternalInconsistency):
    """Coefficients above the expected polynomial degree do not vanish"""


class NotDivisible(InternalInconsistency):
    """A closed-form summand with a t^-m factor left a nonzero negative-power part"""


class GoldenMismatch(InternalInconsistency):
    """A recomputed polynomial differs from the published value"""


class NegativeCoefficient(InternalInconsistency):
    """A Poincare polynomial with a negative coefficient"""
