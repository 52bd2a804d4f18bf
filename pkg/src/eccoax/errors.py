"""Exception hierarchy for the eccoax package."""


class EccoaxError(Exception):
    """Base class for all eccoax errors."""


class InvalidGeometry(EccoaxError):
    """Waveguide cross section violates a geometric invariant."""


class DegenerateGeometry(EccoaxError):
    """Offset is below the concentric threshold; inverse points do not exist."""


class OutOfDomain(EccoaxError):
    """Point lies outside the annular cross section."""


class NonPositiveFrequency(EccoaxError):
    """Frequency or angular frequency must be positive."""


class InvalidAnnulus(EccoaxError):
    """Annulus radii are not ordered 0 < r0 < r1."""


class InvalidResolution(EccoaxError):
    """Grid node counts below the minimum (M >= 3, N >= 5)."""


class IndexOutOfRange(EccoaxError):
    """Grid index outside the unknown ranges of the mode family."""


class MismatchedDomain(EccoaxError):
    """Grid and conformal map describe different annuli."""


class DimensionMismatch(EccoaxError):
    """Vector length does not match the operator size."""


class ConvergenceFailure(EccoaxError):
    """Eigensolver did not meet the residual or realness requirements."""


class InsufficientSpectrum(EccoaxError):
    """More eigenpairs requested than the operator can provide."""


class BracketingFailure(EccoaxError):
    """Root scan exhausted without finding the requested number of roots."""


class ConfigError(EccoaxError):
    """Run configuration is malformed or violates an invariant."""


class AmbiguousLabel(UserWarning):
    """Mode label assigned, but the two leading azimuthal harmonics are
    within 5 percent of each other in magnitude."""
