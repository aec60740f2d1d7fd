"""Error taxonomy shared by all modules.

Usage errors (bad values, out-of-table lookups, malformed specs) derive from
ValueError; resource errors (tables or budgets that would be exceeded) derive
from RuntimeError.  The CLI maps the former to exit code 2 and the latter to
exit code 3.
"""


class ParameterError(ValueError):
    """A parameter violates a documented precondition."""


class RangeError(ValueError):
    """An input lies outside the range covered by a sieve or prime table."""


class DomainError(ValueError):
    """An input is outside the mathematical domain of the operation."""


class ConstructionError(ValueError):
    """A requested construction is impossible (e.g. no prime in the window)."""


class CapacityError(RuntimeError):
    """A memory cap, operation budget, or overflow guard would be exceeded."""
