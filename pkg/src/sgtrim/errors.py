"""Exception types shared across the package."""


class SgtrimError(Exception):
    """Base class for package errors."""


class EmptyInput(SgtrimError):
    """A generator list was empty."""


class NotNumerical(SgtrimError):
    """The generators have gcd > 1 and no truncation point was given, so the
    generated monoid has infinite complement."""


class IsRoot(SgtrimError):
    """parent() was called on the root of the tree (the full set of
    non-negative integers)."""


class InfiniteDescent(SgtrimError):
    """A full descendant enumeration was requested below a node with
    infinitely many descendants (left elements with gcd > 1)."""


class GuardViolation(SgtrimError):
    """The two-back recurrence was applied at a cell outside its proven
    region (2*genus < 3*multiplicity)."""


class CapacityExceeded(SgtrimError):
    """A count no longer fits the declared accumulator width."""
