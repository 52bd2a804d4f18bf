"""Wavenumber recovery and axial field reconstruction.

A geometry eigenvalue lambda turns into physical wavenumbers only when a
medium and frequency are chosen:

    k_rho = sqrt(-(p_s/p_z) * lambda)      (principal root)
    k_z   = sqrt(k_s**2 - k_rho**2)        (upper half plane branch)

with p the permittivity pair for TM and the permeability pair for TE.
The branch rule Im(k_z) >= 0, then Re(k_z) >= 0, selects forward-decaying
waves under the exp(-i*omega*t) convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigensolve import EigenPair, ModeLabel
from .errors import NonPositiveFrequency
from .geometry import ConcentricMap, map_to_eccentric
from .grid import PolarGrid, UnknownIndexing
from .media import (
    ModeFamily,
    UniaxialMedium,
    anisotropy_ratio,
    transverse_wavenumber_squared,
)


@dataclass(frozen=True)
class ModeSolution:
    """One labeled mode evaluated for a medium at one frequency."""

    label: ModeLabel
    lam: float
    k_rho: complex
    k_z: complex
    frequency: float
    medium: UniaxialMedium


def radial_wavenumber(
    lam: float, medium: UniaxialMedium, family: ModeFamily, omega: float
) -> complex:
    """Radial wavenumber from a geometry eigenvalue, rad/m.

    Principal square root of -(p_s/p_z)*lambda: real part >= 0, and
    positive imaginary part on the cut.
    """
    ratio = anisotropy_ratio(medium, family, omega)
    return complex(np.sqrt(-ratio * lam + 0j))


def axial_wavenumber(k_rho: complex, medium: UniaxialMedium, omega: float) -> complex:
    """Axial wavenumber sqrt(k_s**2 - k_rho**2) on the forward-decaying branch."""
    if not omega > 0:
        raise NonPositiveFrequency(f"angular frequency must be positive, got {omega}")
    ks2 = transverse_wavenumber_squared(medium, omega)
    kz = complex(np.sqrt(ks2 - k_rho * k_rho + 0j))
    if kz.imag < 0 or (kz.imag == 0 and kz.real < 0):
        kz = -kz
    return kz


def mode_solution(
    label: ModeLabel,
    lam: float,
    medium: UniaxialMedium,
    frequency: float,
) -> ModeSolution:
    """Evaluate one labeled eigenvalue for a medium at frequency (Hz)."""
    omega = 2.0 * np.pi * frequency
    k_rho = radial_wavenumber(lam, medium, label.family, omega)
    k_z = axial_wavenumber(k_rho, medium, omega)
    return ModeSolution(
        label=label, lam=lam, k_rho=k_rho, k_z=k_z, frequency=frequency, medium=medium
    )


@dataclass(frozen=True, eq=False)
class FieldSamples:
    """Axial field samples on the full M x N node set, including the seam
    duplicate and conductor rows.  Physical coordinates come from mapping
    each node back to the eccentric cross section."""

    rho: np.ndarray
    phi: np.ndarray
    rho_tilde: np.ndarray
    phi_tilde: np.ndarray
    values: np.ndarray

    def rows(self):
        """Iterate (rho, phi, rho_tilde, phi_tilde, value) node by node."""
        for idx in np.ndindex(self.values.shape):
            yield (
                self.rho[idx],
                self.phi[idx],
                self.rho_tilde[idx],
                self.phi_tilde[idx],
                self.values[idx],
            )


def field_samples(
    pair: EigenPair, grid: PolarGrid, cmap: ConcentricMap, family: ModeFamily
) -> FieldSamples:
    """Expand an eigenvector onto the full grid with physical coordinates.

    Dirichlet zeros are reinstated on TM conductor rows and the seam
    column phi = 2*pi repeats phi = 0 exactly.
    """
    indexing = UnknownIndexing(family=family, M=grid.M, N=grid.N)
    from .errors import DimensionMismatch

    if pair.vector.shape != (indexing.total_unknowns,):
        raise DimensionMismatch(
            f"vector length {pair.vector.shape} != {indexing.total_unknowns} unknowns"
        )
    nphi = indexing.n_phi_unique
    full = np.zeros((grid.M, grid.N))
    interior = pair.vector.reshape(indexing.n_radial, nphi)
    full[indexing.i_first - 1 : indexing.i_last, :nphi] = interior
    full[:, nphi] = full[:, 0]

    RHO, PHI = np.meshgrid(grid.rho_nodes, grid.phi_nodes, indexing="ij")
    rho_t, phi_t = map_to_eccentric(cmap, RHO, PHI)
    return FieldSamples(rho=RHO, phi=PHI, rho_tilde=rho_t, phi_tilde=phi_t, values=full)
