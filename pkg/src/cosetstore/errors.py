"""Exception types shared across the package."""


class CosetstoreError(Exception):
    """Base class for all package-specific errors."""


class CapacityError(CosetstoreError):
    """An operation would exceed the configured memory or size budget."""


class DimensionError(CosetstoreError, ValueError):
    """Incompatible operand shapes."""


class IntegrityError(CosetstoreError):
    """Redundant input copies disagree."""


class BudgetExhausted(CosetstoreError):
    """A bounded search ran out of its node budget."""
