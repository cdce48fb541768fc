"""Exception taxonomy shared by every module.

Each operation documents which of these it can raise; anything else escaping an
operation is a bug. `CounterexampleFound` carries the offending report so callers
can print it before dying.
"""

from __future__ import annotations


class ExplabError(Exception):
    """Base class for all library errors."""


class InvalidInput(ExplabError):
    """Malformed structure: bad edge list, ragged matrix, bad field element, ..."""


class BadParameters(InvalidInput):
    """Constructor parameters outside the documented domain."""


class NonPrime(InvalidInput):
    """Field characteristic is not a prime number."""


class NotSymmetric(InvalidInput):
    """Eigensolver input matrix is not symmetric."""


class NotRegular(InvalidInput):
    """Operation requires a d-regular graph and the input is not one."""


class LengthMismatch(InvalidInput):
    """Vector/block length does not match the expected dimension."""


class DegenerateParams(ExplabError):
    """Parameter combination makes a formula meaningless (zero/negative denominator)."""


class HypothesisViolated(ExplabError):
    """A theorem's hypothesis fails for these parameters (e.g. d*eps <= mu)."""


class TooLarge(ExplabError):
    """Instance exceeds a documented enumeration or solver cap."""


class FieldTooLarge(TooLarge):
    """Requested field order exceeds the lookup-table cap."""


class EmptyRange(ExplabError):
    """No admissible subset sizes: floor(alpha * n) < 1."""


class NoConvergence(ExplabError):
    """Iterative eigensolver failed to reach tolerance within its sweep budget."""


class CheckFailed(ExplabError):
    """A structural identity that must hold exactly failed to hold."""


class GivesUp(ExplabError):
    """Randomized construction exhausted its retry budget."""


class InternalMismatch(ExplabError):
    """Two independent routes to the same quantity disagreed. Always a bug."""


class CounterexampleFound(ExplabError):
    """Exhaustive verification found a subset violating a proved inequality.

    Must never fire; if it does, either the implementation or the statement is
    wrong, and `report` holds the evidence.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class DisconnectedWarning(UserWarning):
    """Spectral quantities requested for a disconnected graph (lambda_1 = d)."""
