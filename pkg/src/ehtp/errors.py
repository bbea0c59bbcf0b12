"""Exception types shared across the package.

The CLI maps these onto exit codes: ScenarioError -> 2 (bad input shape),
NumericalError -> 3 (a numerical precondition or verification failed),
everything assertion-like -> 1.
"""

from __future__ import annotations


class EhtpError(Exception):
    """Base class for all package errors."""


class NonAbelianError(EhtpError):
    """Raised when character/Fourier machinery is asked to work without a
    cyclic-product presentation (non-abelian group, or abelian group given
    only by a Cayley table)."""


class GroupMismatchError(EhtpError):
    """Two objects live over different groups."""


class DimensionMismatchError(EhtpError):
    """Matrix dimensions are inconsistent."""


class NumericalError(EhtpError):
    """A numerical verification failed: unitarity/homomorphism residuals,
    joint diagonalization, phase rounding, reconstruction checks."""


class NotCompletelyPositiveError(EhtpError):
    """Kraus extraction was requested for a map that is not completely
    positive."""


class BimoduleError(EhtpError):
    """A map was expected to be a bimodule map over the diagonal algebra
    (a Schur multiplier) and is not."""


class RestrictionMismatchError(EhtpError):
    """Restriction of a representation to a subgroup produced a character
    set different from the restricted character set."""


class EquivalenceViolationError(EhtpError):
    """Two criteria that are provably equivalent disagreed; signals a bug."""


class ScenarioError(EhtpError):
    """A scenario/JSON document does not match the expected schema."""
