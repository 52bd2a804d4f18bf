"""Assembly of the generalized eigenproblem A v = lambda B v.

A discretizes the cylindrical Laplacian with second-order central
differences on the polar grid; B is the diagonal of inverse-Jacobian
weights.  Boundary handling: TM rows next to a conductor simply drop the
Dirichlet neighbor; TE conductor rows eliminate the mirror ghost, which
doubles the single interior radial neighbor and cancels the first
derivative term.  Azimuthal neighbors wrap across the seam.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .errors import DimensionMismatch, MismatchedDomain
from .geometry import ConcentricMap, jacobian_inv
from .grid import PolarGrid, UnknownIndexing
from .media import ModeFamily


def stencil_coefficients(rho: float, h_rho: float, h_phi: float):
    """Five-point coefficients at radius rho: (center, rho+, rho-, phi).

    center = -2/h_rho**2 - 2/(rho**2 h_phi**2)
    rho+/- = 1/h_rho**2 +/- 1/(2 rho h_rho)
    phi    = 1/(rho**2 h_phi**2), used for both azimuthal neighbors.
    """
    inv_h2 = 1.0 / (h_rho * h_rho)
    inv_p2 = 1.0 / (rho * rho * h_phi * h_phi)
    first = 1.0 / (2.0 * rho * h_rho)
    return (-2.0 * inv_h2 - 2.0 * inv_p2, inv_h2 + first, inv_h2 - first, inv_p2)


@dataclass
class DiscreteOperator:
    """Assembled matrices with their grid, map, and unknown numbering."""

    A: sparse.csr_matrix
    B: np.ndarray
    indexing: UnknownIndexing
    grid: PolarGrid
    cmap: ConcentricMap
    _a_norm_inf: float | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def a_norm_inf(self) -> float:
        """Infinity norm of A (max absolute row sum), cached."""
        if self._a_norm_inf is None:
            self._a_norm_inf = float(abs(self.A).sum(axis=1).max())
        return self._a_norm_inf

    def b_matrix(self) -> sparse.dia_matrix:
        return sparse.diags(self.B)


def assemble(grid: PolarGrid, cmap: ConcentricMap, family: ModeFamily) -> DiscreteOperator:
    """Assemble A (stencil operator, 1/m**2) and B (Jacobian weights).

    Raises MismatchedDomain when the grid and map annuli disagree.
    """
    if not (
        np.isclose(grid.r0, cmap.r0_mapped, rtol=1e-12, atol=0.0)
        and np.isclose(grid.r1, cmap.r1_mapped, rtol=1e-12, atol=0.0)
    ):
        raise MismatchedDomain(
            f"grid annulus ({grid.r0}, {grid.r1}) != map annulus "
            f"({cmap.r0_mapped}, {cmap.r1_mapped})"
        )
    indexing = UnknownIndexing(family=family, M=grid.M, N=grid.N)
    nphi = indexing.n_phi_unique
    n = indexing.total_unknowns
    phi_u = grid.phi_nodes[:nphi]
    cols_j = np.arange(nphi)
    jp = (cols_j + 1) % nphi
    jm = (cols_j - 1) % nphi

    rows, cols, vals = [], [], []
    B = np.empty(n)

    def block(i):  # 0-based offset of radial row i (1-based)
        return (i - indexing.i_first) * nphi

    for i in range(indexing.i_first, indexing.i_last + 1):
        rho_i = grid.rho_nodes[i - 1]
        center, c_plus, c_minus, c_phi = stencil_coefficients(
            rho_i, grid.h_rho, grid.h_phi
        )
        base = block(i)
        k = base + cols_j
        rows.append(k)
        cols.append(k)
        vals.append(np.full(nphi, center))
        rows.append(k)
        cols.append(base + jp)
        vals.append(np.full(nphi, c_phi))
        rows.append(k)
        cols.append(base + jm)
        vals.append(np.full(nphi, c_phi))

        if family is ModeFamily.TE and i == 1:
            # mirror ghost below the inner conductor: neighbor doubled,
            # first-derivative term cancels
            rows.append(k)
            cols.append(block(2) + cols_j)
            vals.append(np.full(nphi, 2.0 / grid.h_rho**2))
        elif family is ModeFamily.TE and i == grid.M:
            rows.append(k)
            cols.append(block(grid.M - 1) + cols_j)
            vals.append(np.full(nphi, 2.0 / grid.h_rho**2))
        else:
            if i + 1 <= indexing.i_last:
                rows.append(k)
                cols.append(block(i + 1) + cols_j)
                vals.append(np.full(nphi, c_plus))
            if i - 1 >= indexing.i_first:
                rows.append(k)
                cols.append(block(i - 1) + cols_j)
                vals.append(np.full(nphi, c_minus))

        B[k] = jacobian_inv(cmap, rho_i, phi_u)

    A = sparse.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    )
    return DiscreteOperator(A=A, B=B, indexing=indexing, grid=grid, cmap=cmap)


def apply_operator(op: DiscreteOperator, v: np.ndarray) -> np.ndarray:
    """Return A @ v."""
    v = np.asarray(v)
    if v.shape != (op.n,):
        raise DimensionMismatch(f"expected vector of length {op.n}, got {v.shape}")
    return op.A @ v


def dump_coordinate_triples(op: DiscreteOperator, path_prefix: str) -> tuple[str, str]:
    """Write A and B as 'row col value' text files; returns the two paths."""
    coo = op.A.tocoo()
    path_a = f"{path_prefix}_A.txt"
    path_b = f"{path_prefix}_B.txt"
    with open(path_a, "w") as fh:
        for r, c, v in zip(coo.row, coo.col, coo.data):
            fh.write(f"{r} {c} {v:.17g}\n")
    with open(path_b, "w") as fh:
        for k, v in enumerate(op.B):
            fh.write(f"{k} {k} {v:.17g}\n")
    return path_a, path_b
