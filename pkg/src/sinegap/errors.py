"""Exception types shared across the package.

Two failure families are kept apart so callers (and the CLI exit codes)
can tell bad input from a computation that went off the rails.
"""


class ValidationError(ValueError):
    """Input rejected before any computation (domain, shape, or range)."""


class NumericalError(ArithmeticError):
    """A computation produced an unusable result (singular pivot, lost sign,
    negative probability mass beyond tolerance, non-finite intermediate)."""
