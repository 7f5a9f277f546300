"""Error taxonomy shared by all modules.

CLI exit codes: usage errors exit 2 (argparse), ResourceBudgetError 3,
ContractError (incl. out-of-range) 4, SearchFailedError 5.
"""


class GradedGrowthError(Exception):
    """Base class for all library errors."""


class ContractError(GradedGrowthError):
    """A documented precondition was violated by the caller."""


class OutOfRangeError(ContractError):
    """An element fell outside a computed ball / ambient enumeration.

    Raised instead of silently guessing; callers should enlarge the ball.
    """


class ResourceBudgetError(GradedGrowthError):
    """A configured memory or size budget was exceeded."""


class SearchFailedError(GradedGrowthError):
    """An explicit search (Folner set, tiling tower, quotient index) ran out
    of budget without success.  Never interpreted as a mathematical
    impossibility result."""
