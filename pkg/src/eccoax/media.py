"""Constitutive parameters of uniaxially anisotropic, possibly lossy media.

Tensors are diagonal with a transverse value (subscript s, repeated on the
two in-plane axes) and an axial value (subscript z).  Loss enters through
the conductivities: under the exp(-i*omega*t) time convention the complex
relative permittivity is ``eps_r + i*sigma/(omega*EPS0)`` per component,
so lossy media have positive imaginary parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .constants import EPS0, MU0
from .errors import InvalidGeometry, NonPositiveFrequency
from .geometry import ConcentricMap, jacobian_inv


class ModeFamily(Enum):
    """Axial-field family: TM solves E_z with permittivity parameters,
    TE solves H_z with permeability parameters."""

    TM = "TM"
    TE = "TE"


@dataclass(frozen=True)
class UniaxialMedium:
    """Relative permeability/permittivity pairs and conductivities.

    Defaults describe vacuum.  Conductivities are S/m; everything else is
    dimensionless.
    """

    mu_rs: float = 1.0
    mu_rz: float = 1.0
    eps_rs: float = 1.0
    eps_rz: float = 1.0
    sigma_s: float = 0.0
    sigma_z: float = 0.0

    def __post_init__(self):
        if min(self.mu_rs, self.mu_rz, self.eps_rs, self.eps_rz) <= 0:
            raise InvalidGeometry("relative permeability/permittivity must be positive")
        if min(self.sigma_s, self.sigma_z) < 0:
            raise InvalidGeometry("conductivities must be non-negative")


VACUUM = UniaxialMedium()


def _check_omega(omega: float) -> None:
    if not omega > 0:
        raise NonPositiveFrequency(f"angular frequency must be positive, got {omega}")


def complex_relative_permittivity(
    medium: UniaxialMedium, omega: float
) -> tuple[complex, complex]:
    """Complex relative permittivity (transverse, axial) at angular
    frequency ``omega``; imaginary parts are sigma/(omega*EPS0) >= 0."""
    _check_omega(omega)
    scale = 1.0 / (omega * EPS0)
    return (
        medium.eps_rs + 1j * medium.sigma_s * scale,
        medium.eps_rz + 1j * medium.sigma_z * scale,
    )


def anisotropy_ratio(medium: UniaxialMedium, family: ModeFamily, omega: float) -> complex:
    """Transverse-to-axial constitutive ratio entering the wavenumber
    recovery: complex permittivity ratio for TM, permeability ratio for TE.

    Invariant under joint rescaling of the transverse and axial values.
    """
    _check_omega(omega)
    if family is ModeFamily.TM:
        eps_s, eps_z = complex_relative_permittivity(medium, omega)
        return eps_s / eps_z
    return complex(medium.mu_rs / medium.mu_rz)


def transverse_wavenumber_squared(medium: UniaxialMedium, omega: float) -> complex:
    """Squared medium wavenumber built from the transverse parameters,
    ``omega**2 * mu0*mu_rs * eps0*eps_rs_complex``."""
    eps_s, _ = complex_relative_permittivity(medium, omega)
    return omega * omega * MU0 * medium.mu_rs * EPS0 * eps_s


def transformed_axial_parameter(
    medium: UniaxialMedium,
    cmap: ConcentricMap,
    rho,
    phi,
    family: ModeFamily,
    omega: float | None = None,
):
    """Axial constitutive parameter after mapping, absolute SI units.

    The transverse parameter is unchanged by the map; the axial one is
    scaled pointwise by the inverse Jacobian determinant.  For lossy TM
    media ``omega`` is required to form the complex permittivity; lossless
    media may omit it.
    """
    if family is ModeFamily.TM:
        if medium.sigma_z != 0.0:
            if omega is None:
                raise NonPositiveFrequency(
                    "omega required for the complex permittivity of a lossy medium"
                )
            _, eps_z = complex_relative_permittivity(medium, omega)
            p_axial = EPS0 * eps_z
        else:
            p_axial = EPS0 * medium.eps_rz
    else:
        p_axial = MU0 * medium.mu_rz
    return p_axial * jacobian_inv(cmap, rho, phi)
