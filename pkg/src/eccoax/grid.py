"""Polar grid on the concentric annulus and unknown numbering.

The grid keeps both seam nodes phi_1 = 0 and phi_N = 2*pi; they describe
the same physical angle.  The unknown numbering folds the duplicate away
and works with the N-1 unique angles, wrapping azimuthal neighbors so the
periodic condition holds by construction.  Radial unknown ranges depend on
the family: the conductor rows are Dirichlet-eliminated for TM and kept
(with mirrored ghosts) for TE, giving (M-2)*(N-1) and M*(N-1) unknowns
respectively.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, InvalidAnnulus, InvalidResolution
from .media import ModeFamily


@dataclass(frozen=True, eq=False)
class PolarGrid:
    """Uniform polar grid with M radial and N azimuthal nodes.

    ``phi_nodes`` includes the duplicate seam angle 2*pi at j = N, so
    ``h_phi = 2*pi/(N-1)``.  Node arrays are read-only.
    """

    r0: float
    r1: float
    M: int
    N: int
    h_rho: float
    h_phi: float
    rho_nodes: np.ndarray
    phi_nodes: np.ndarray


def build_grid(r0: float, r1: float, M: int, N: int) -> PolarGrid:
    """Build the annulus grid: rho_i = r0 + (i-1)*h_rho, phi_j = (j-1)*h_phi.

    Raises
    ------
    InvalidAnnulus
        Unless 0 < r0 < r1.
    InvalidResolution
        Unless M >= 3 and N >= 5.
    """
    if not (0 < r0 < r1):
        raise InvalidAnnulus(f"need 0 < r0 < r1, got r0={r0}, r1={r1}")
    if M < 3 or N < 5:
        raise InvalidResolution(f"need M >= 3 and N >= 5, got M={M}, N={N}")
    rho = np.linspace(r0, r1, M)
    phi = np.linspace(0.0, 2.0 * np.pi, N)
    rho.flags.writeable = False
    phi.flags.writeable = False
    return PolarGrid(
        r0=r0,
        r1=r1,
        M=M,
        N=N,
        h_rho=(r1 - r0) / (M - 1),
        h_phi=2.0 * np.pi / (N - 1),
        rho_nodes=rho,
        phi_nodes=phi,
    )


@dataclass(frozen=True)
class UnknownIndexing:
    """Bijection between grid nodes and linear unknowns for one family.

    Indices are 1-based to match the grid convention: radial i runs over
    [i_first, i_last] and azimuthal j over [1, N-1] (unique angles only).
    """

    family: ModeFamily
    M: int
    N: int

    @property
    def n_phi_unique(self) -> int:
        return self.N - 1

    @property
    def i_first(self) -> int:
        return 2 if self.family is ModeFamily.TM else 1

    @property
    def i_last(self) -> int:
        return self.M - 1 if self.family is ModeFamily.TM else self.M

    @property
    def n_radial(self) -> int:
        return self.i_last - self.i_first + 1

    @property
    def total_unknowns(self) -> int:
        return self.n_radial * self.n_phi_unique


def unknown_index(indexing: UnknownIndexing, i: int, j: int) -> int:
    """Linear unknown index of grid node (i, j), row-major in the radius."""
    if not (indexing.i_first <= i <= indexing.i_last):
        raise IndexOutOfRange(
            f"radial index {i} outside [{indexing.i_first}, {indexing.i_last}] "
            f"for {indexing.family.value}"
        )
    if not (1 <= j <= indexing.n_phi_unique):
        raise IndexOutOfRange(
            f"azimuthal index {j} outside [1, {indexing.n_phi_unique}]"
        )
    return (i - indexing.i_first) * indexing.n_phi_unique + (j - 1)


def unknown_location(indexing: UnknownIndexing, k: int) -> tuple[int, int]:
    """Grid node (i, j) of linear unknown k; inverse of unknown_index."""
    if not (0 <= k < indexing.total_unknowns):
        raise IndexOutOfRange(f"unknown {k} outside [0, {indexing.total_unknowns})")
    i, j0 = divmod(k, indexing.n_phi_unique)
    return i + indexing.i_first, j0 + 1


def phi_neighbor(indexing: UnknownIndexing, j: int, step: int) -> int:
    """Azimuthal neighbor of column j, wrapping across the seam."""
    if not (1 <= j <= indexing.n_phi_unique):
        raise IndexOutOfRange(f"azimuthal index {j} outside [1, {indexing.n_phi_unique}]")
    return (j - 1 + step) % indexing.n_phi_unique + 1
