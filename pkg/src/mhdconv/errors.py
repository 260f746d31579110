"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own class;
all inherit from MhdconvError so library users can catch broadly.  The CLI
maps these onto its exit-code contract.
"""

from __future__ import annotations

__all__ = [
    "MhdconvError",
    "SolverFailure",
    "NegativeFrequencySquared",
    "InvalidRegime",
    "DegenerateDenominator",
    "ZeroCoefficient",
    "NonpositivePairing",
    "BranchMismatch",
    "Diverged",
    "UnsupportedCriticalSet",
]


class MhdconvError(Exception):
    """Base class for package errors."""


class SolverFailure(MhdconvError):
    """A numerical routine failed its own residual or consistency check."""


class NegativeFrequencySquared(MhdconvError):
    """The squared oscillation frequency came out negative where a positive
    value was required."""


class InvalidRegime(MhdconvError):
    """The requested operation is meaningless for these parameters
    (e.g. asking for the oscillatory-onset machinery with p2 >= 1)."""


class DegenerateDenominator(MhdconvError):
    """A resonance denominator of the reduction vanished (to tolerance)."""


class ZeroCoefficient(MhdconvError):
    """A sign-deciding coefficient is zero to tolerance, so the type of the
    transition cannot be called."""


class NonpositivePairing(MhdconvError):
    """The eigenmode / conjugate-mode pairing <psi, psi*> is not positive,
    so coefficients normalised by it are unreliable."""


class BranchMismatch(MhdconvError):
    """A diffusion-eigenmode branch was requested that does not exist for
    the given index (e.g. a velocity branch with no planform)."""


class Diverged(MhdconvError):
    """A trajectory left the trust region of the integrator."""


class UnsupportedCriticalSet(MhdconvError):
    """The critical eigenspace has a structure the classifier does not
    cover (e.g. a symmetric tie that is not a hexagon pair)."""
