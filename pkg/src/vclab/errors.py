"""Error types with stable machine-readable codes.

Every failure mode that callers (or the CLI exit-code protocol) need to
distinguish gets its own class; the ``code`` attribute is what reports and
tests key on, the message is free-form.
"""


class VclabError(Exception):
    """Base class for all package errors."""

    code = "DOMAIN"


class DomainError(VclabError):
    """A value violates a type invariant (bad interval, negative radius, ...)."""

    code = "DOMAIN"


class ParseError(VclabError):
    """Malformed input file or serialized value."""

    code = "PARSE"


class EmptySetError(VclabError):
    code = "EMPTY_SET"


class DimensionMismatchError(VclabError):
    code = "DIMENSION_MISMATCH"


class DuplicateAfterProjectionError(VclabError):
    code = "DUPLICATE_AFTER_PROJECTION"


class AnchorMissingError(VclabError):
    code = "ANCHOR_MISSING"


class UnboundedAnchorError(VclabError):
    code = "UNBOUNDED_ANCHOR"


class NotContainingAnchorError(VclabError):
    code = "NOT_CONTAINING_ANCHOR"


class NotContainingZeroError(VclabError):
    code = "NOT_CONTAINING_ZERO"


class NotShatteredError(VclabError):
    code = "NOT_SHATTERED"

    def __init__(self, message: str, mask: "int | None" = None):
        super().__init__(message)
        self.mask = mask


class NoConvergenceError(VclabError):
    code = "NO_CONVERGENCE"


class CapExceededError(VclabError):
    code = "CAP_EXCEEDED"


class BudgetExceededError(VclabError):
    code = "BUDGET_EXCEEDED"
