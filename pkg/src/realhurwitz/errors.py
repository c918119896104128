"""Exception types shared across the package."""


class HurwitzError(Exception):
    """Base class for all package-specific errors."""


class DegreeMismatchError(HurwitzError, ValueError):
    """|lambda| != |mu| where equal degrees are required."""


class SplitRangeError(HurwitzError, ValueError):
    """Number of positive branch points outside [0, r]."""


class BudgetExceededError(HurwitzError, RuntimeError):
    """Search exceeded the configured node budget; result absent, never approximate."""


class NonIntegralMultiplicityError(HurwitzError, ArithmeticError):
    """Real multiplicity evaluated to a non-integer (degenerate family)."""


class UnclassifiableVertexError(HurwitzError, RuntimeError):
    """Local vertex configuration matched no row of the sign rule table."""


class HypothesisViolationError(HurwitzError, ValueError):
    """Instance lies in the excluded family {lambda, mu} subset {(2k), (k,k)} or has r <= 0."""


class ColouringNotFoundError(HurwitzError, LookupError):
    """No colouring induces the requested splitting."""


class ColouringNotUniqueError(HurwitzError, LookupError):
    """More than one colouring induces the requested splitting."""


class ConstructionFailureError(HurwitzError, RuntimeError):
    """Witness construction could not complete (indicates an inequality evaluation bug)."""


class InfeasibleError(HurwitzError, RuntimeError):
    """Appendix threshold has no feasible solution for this instance."""
