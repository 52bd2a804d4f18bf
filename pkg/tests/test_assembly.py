import numpy as np
import pytest
from scipy.linalg import eig as dense_eig

from eccoax import (
    DimensionMismatch,
    EccentricGeometry,
    MismatchedDomain,
    ModeFamily,
    apply_operator,
    assemble,
    build_grid,
    build_map,
    jacobian_inv,
    stencil_coefficients,
    unknown_index,
)


def make_operator(geom, M, N, family):
    cmap = build_map(geom)
    grid = build_grid(cmap.r0_mapped, cmap.r1_mapped, M, N)
    return assemble(grid, cmap, family), grid, cmap


class TestStencil:
    def test_reference_coefficients(self):
        center, rp, rm, ph = stencil_coefficients(1.0, 0.1, 0.1)
        assert center == pytest.approx(-400.0, rel=1e-12)
        assert rp == pytest.approx(105.0, rel=1e-12)
        assert rm == pytest.approx(95.0, rel=1e-12)
        assert ph == pytest.approx(100.0, rel=1e-12)

    def test_row_sum_zero(self):
        center, rp, rm, ph = stencil_coefficients(1.0, 0.1, 0.1)
        assert center + rp + rm + 2 * ph == pytest.approx(0.0, abs=1e-10)


class TestAssemble:
    def test_te_all_rows_annihilate_constants(self, fig2_geometry):
        op, _, _ = make_operator(fig2_geometry, 10, 41, ModeFamily.TE)
        r = apply_operator(op, np.ones(op.n))
        assert np.max(np.abs(r)) <= 1e-12 * op.a_norm_inf

    def test_tm_ones_nonzero_only_near_conductors(self, fig2_geometry):
        op, grid, _ = make_operator(fig2_geometry, 10, 41, ModeFamily.TM)
        r = apply_operator(op, np.ones(op.n))
        nphi = grid.N - 1
        r2d = r.reshape(-1, nphi)
        tol = 1e-12 * op.a_norm_inf
        assert np.all(np.abs(r2d[1:-1]) <= tol)  # interior radial rows
        assert np.all(np.abs(r2d[0]) > tol)  # rows missing a Dirichlet neighbor
        assert np.all(np.abs(r2d[-1]) > tol)

    def test_five_point_structure(self, fig2_geometry):
        for family in ModeFamily:
            op, _, _ = make_operator(fig2_geometry, 12, 33, family)
            nnz_per_row = np.diff(op.A.indptr)
            assert nnz_per_row.max() <= 5
            assert np.all(np.isfinite(op.A.data))

    def test_b_matches_geometry_module_bitwise(self, fig2_geometry):
        op, grid, cmap = make_operator(fig2_geometry, 10, 41, ModeFamily.TM)
        idx = op.indexing
        for i in range(idx.i_first, idx.i_last + 1):
            for j in range(1, idx.n_phi_unique + 1):
                k = unknown_index(idx, i, j)
                expect = jacobian_inv(
                    cmap, grid.rho_nodes[i - 1], grid.phi_nodes[j - 1]
                )
                assert op.B[k] == expect
        assert np.all(op.B > 0)

    def test_degenerate_map_gives_identity_b(self):
        geom = EccentricGeometry(5e-3, 0.25e-3, 0.0)
        op, _, _ = make_operator(geom, 10, 41, ModeFamily.TE)
        assert np.all(op.B == 1.0)

    def test_coefficients_at_one_interior_row(self, fig2_geometry):
        op, grid, _ = make_operator(fig2_geometry, 10, 41, ModeFamily.TM)
        idx = op.indexing
        i = 5
        rho = grid.rho_nodes[i - 1]
        center, rp, rm, ph = stencil_coefficients(rho, grid.h_rho, grid.h_phi)
        k = unknown_index(idx, i, 3)
        row = op.A.getrow(k).toarray().ravel()
        assert row[k] == pytest.approx(center, rel=1e-14)
        assert row[unknown_index(idx, i + 1, 3)] == pytest.approx(rp, rel=1e-14)
        assert row[unknown_index(idx, i - 1, 3)] == pytest.approx(rm, rel=1e-14)
        assert row[unknown_index(idx, i, 2)] == pytest.approx(ph, rel=1e-14)
        assert row[unknown_index(idx, i, 4)] == pytest.approx(ph, rel=1e-14)

    def test_te_boundary_rows_fold_ghosts(self, fig2_geometry):
        op, grid, _ = make_operator(fig2_geometry, 10, 41, ModeFamily.TE)
        idx = op.indexing
        k = unknown_index(idx, 1, 7)
        row = op.A.getrow(k).toarray().ravel()
        assert row[unknown_index(idx, 2, 7)] == pytest.approx(
            2.0 / grid.h_rho**2, rel=1e-14
        )
        k_top = unknown_index(idx, grid.M, 7)
        row_top = op.A.getrow(k_top).toarray().ravel()
        assert row_top[unknown_index(idx, grid.M - 1, 7)] == pytest.approx(
            2.0 / grid.h_rho**2, rel=1e-14
        )

    def test_mismatched_domain(self, fig2_geometry):
        cmap = build_map(fig2_geometry)
        grid = build_grid(1.1 * cmap.r0_mapped, cmap.r1_mapped, 10, 41)
        with pytest.raises(MismatchedDomain):
            assemble(grid, cmap, ModeFamily.TM)

    def test_reflection_symmetry_of_spectrum(self, fig2_geometry):
        # mirror the azimuthal numbering about the symmetry axis: the
        # permuted problem must have the same spectrum
        op, grid, _ = make_operator(fig2_geometry, 8, 25, ModeFamily.TM)
        nphi = grid.N - 1
        nrad = op.n // nphi
        perm2d = np.zeros(nphi, dtype=int)
        perm2d[0] = 0
        perm2d[1:] = np.arange(nphi - 1, 0, -1)
        perm = (np.arange(nrad)[:, None] * nphi + perm2d[None, :]).ravel()
        A = op.A.toarray()
        B = np.diag(op.B)
        A_ref = A[np.ix_(perm, perm)]
        B_ref = B[np.ix_(perm, perm)]
        w = np.sort(dense_eig(np.linalg.solve(B, A), right=False).real)
        w_ref = np.sort(dense_eig(np.linalg.solve(B_ref, A_ref), right=False).real)
        np.testing.assert_allclose(w, w_ref, rtol=1e-10)


class TestApplyOperator:
    def test_matches_matrix_action(self, fig2_geometry):
        op, _, _ = make_operator(fig2_geometry, 6, 9, ModeFamily.TE)
        e = np.zeros(op.n)
        e[5] = 1.0
        np.testing.assert_array_equal(
            apply_operator(op, e), op.A.toarray()[:, 5]
        )

    def test_dimension_mismatch(self, fig2_geometry):
        op, _, _ = make_operator(fig2_geometry, 6, 9, ModeFamily.TE)
        with pytest.raises(DimensionMismatch):
            apply_operator(op, np.ones(op.n + 1))
