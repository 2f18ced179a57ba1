"""Exception types shared across the package.

Exit-code mapping in the CLI: ValidationError -> 2, BudgetError -> 3.
"""


class ArrgraphError(Exception):
    """Base class for all package errors."""


class ValidationError(ArrgraphError, ValueError):
    """Bad parameters or malformed input data."""


class BudgetError(ArrgraphError, RuntimeError):
    """A configured resource guard (node budget, enumeration threshold,
    vertex-count guard) was exceeded. Never a wrong answer."""


class IntransitiveActionError(ArrgraphError, ValueError):
    """Block-system machinery was asked about an intransitive action."""


class FamilyError(ArrgraphError, ValueError):
    """A group element maps a set family member outside the family,
    i.e. the family is not invariant under the given group."""
