"""Exception types raised by the toolkit.

All of them derive from ``ValueError`` so callers that only care about
"bad input" can catch one thing.
"""


class SpecError(ValueError):
    """A function spec is malformed or violates one of its invariants."""


class SizeError(SpecError):
    """A sample count or evaluation grid is too small."""


class AliasingError(SizeError):
    """Quadrature grid is below the ``8 * order`` anti-aliasing margin."""


class DomainError(ValueError):
    """Argument outside the function's domain, or wrong kind of function."""


class CenterNotZeroedError(ValueError):
    """A band center still carries the target harmonic."""
