"""Exception types raised across the package.

Everything derives from AdskgError so callers can catch broadly; the leaf
classes match specific failure modes of the numerics (series breakdown,
parameter-range violations, degenerate linear algebra, ...).
"""


class AdskgError(Exception):
    """Base class for all package-specific errors."""


class PoleError(AdskgError):
    """Gamma function evaluated at a nonpositive integer."""


class ConvergenceError(AdskgError):
    """A series failed to reach the requested tolerance within max_terms."""


class DomainError(AdskgError):
    """Argument outside the admissible domain of a function."""


class BfViolation(AdskgError):
    """Mass squared below the Breitenlohner-Freedman bound."""


class EvenDimension(AdskgError):
    """Spatial dimension must be odd (and >= 3)."""


class WindowError(AdskgError):
    """A radial window touches a singular endpoint (0 or pi/2)."""


class BoundaryProximity(AdskgError):
    """A finite-difference stencil would leave the sampled domain."""


class CapabilityError(AdskgError):
    """Operation requires noninteger nu (C-modes / transfer matrix)."""


class SingularPoint(AdskgError):
    """Radial function evaluated at a point where it diverges."""


class ExceptionalBranch(AdskgError):
    """Minus-branch Jacobi modes requested outside nu in (0, 1)."""


class DegenerateBasis(AdskgError):
    """Wronskian of the C-basis too small to invert the transfer relation."""


class BasisMismatch(AdskgError):
    """Two momentum representations use different radial bases."""


class BandLimitExceeded(AdskgError):
    """Inversion residual shows the data is not band-limited as claimed."""


class RadialNodeError(AdskgError):
    """Rod inversion hit a zero of the regular radial function."""


class MagicFrequencyBlind(AdskgError):
    """Rod boundary data cannot see a label at a magic frequency (m12 = 0)."""


class IntegerNu(AdskgError):
    """Twisted-derivative boundary limit degenerates at integer nu."""


class UnsupportedDimension(AdskgError):
    """Angular machinery only implemented for d = 3."""


class ProjectionResidual(AdskgError):
    """Boost coefficient extraction left leakage outside contiguous labels."""


class WindowOverflow(AdskgError):
    """Rep support touches the boundary of the extracted coefficient table."""


class SerializationError(AdskgError):
    """Malformed or unsupported rep file."""
