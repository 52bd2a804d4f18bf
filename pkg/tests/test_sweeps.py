import numpy as np
import pytest

from eccoax import (
    EccentricGeometry,
    ModeFamily,
    UniaxialMedium,
    concentric_cutoffs,
    sweep_anisotropy,
    sweep_eccentricity,
    sweep_frequency,
)

BASE = EccentricGeometry(r1_outer=5e-3, r0_inner=0.25e-3, offset=1e-3)
FIG5_GEOMETRY = EccentricGeometry(r1_outer=10e-3, r0_inner=2e-3, offset=3e-3)
FIG5_MEDIUM = UniaxialMedium(eps_rs=5.6, eps_rz=4.6, sigma_s=0.38, sigma_z=0.34)


class TestEccentricitySweep:
    def test_four_point_sweep_structure(self):
        result = sweep_eccentricity(
            BASE, [0.05, 0.10, 0.15, 0.20], 10, 41, modes_per_family=3
        )
        assert result.axis_name == "d_over_r1"
        assert len(result.axis) == 4
        te = [r for r in result.rows if r.label.family is ModeFamily.TE]
        tm = [r for r in result.rows if r.label.family is ModeFamily.TM]
        assert len(te) == 3 and len(tm) == 3
        for row in result.rows:
            assert row.quantity == "k_rho"
            assert row.values.shape == (4,)
            assert not np.any(np.isnan(row.values))
        assert result.provenance["eigensolves"] == 8  # offsets x families

    def test_no_jumps_between_adjacent_offsets(self):
        result = sweep_eccentricity(
            BASE, [0.05, 0.10, 0.15, 0.20], 10, 41, modes_per_family=3
        )
        for row in result.rows:
            v = np.abs(row.values)
            assert np.all(np.abs(np.diff(v)) < 0.2 * v[:-1])

    def test_concentric_offset_matches_oracle(self):
        result = sweep_eccentricity(
            BASE, [0.0], 24, 97, families=(ModeFamily.TM,), modes_per_family=1
        )
        k_ref = concentric_cutoffs(0.25e-3, 5e-3, ModeFamily.TM, 0, 1)[0].k
        assert result.rows[0].values[0].real == pytest.approx(k_ref, rel=5e-3)
        assert result.provenance["eigensolves"] == 1

    def test_axis_reorder_invariance(self):
        fwd = sweep_eccentricity(
            BASE, [0.05, 0.20], 10, 41, families=(ModeFamily.TM,), modes_per_family=2
        )
        rev = sweep_eccentricity(
            BASE, [0.20, 0.05], 10, 41, families=(ModeFamily.TM,), modes_per_family=2
        )
        for row in fwd.rows:
            match = rev.row(row.label.short())
            np.testing.assert_allclose(
                row.values, match.values[::-1], rtol=1e-12
            )

    def test_serial_equals_parallel(self):
        par = sweep_eccentricity(
            BASE, [0.05, 0.15], 10, 41, families=(ModeFamily.TE,), modes_per_family=2
        )
        ser = sweep_eccentricity(
            BASE,
            [0.05, 0.15],
            10,
            41,
            families=(ModeFamily.TE,),
            modes_per_family=2,
            parallel=False,
        )
        for a, b in zip(par.rows, ser.rows):
            assert a.label.key == b.label.key
            np.testing.assert_array_equal(a.values, b.values)


class TestAnisotropySweep:
    def test_single_eigensolve_and_sqrt_scaling(self):
        geom = EccentricGeometry(5e-3, 0.25e-3, 1e-3)
        result = sweep_anisotropy(geom, [1.0, 2.0, 5.0, 10.0], "transverse", 10, 41)
        assert result.provenance["eigensolves"] == 1
        assert result.axis_name == "eps_rs"
        k = result.rows[0].values
        for i, r in enumerate([1.0, 2.0, 5.0, 10.0]):
            assert k[i] / k[0] == pytest.approx(np.sqrt(r), rel=1e-12)

    def test_axial_inverse_scaling(self):
        geom = EccentricGeometry(5e-3, 0.25e-3, 1e-3)
        result = sweep_anisotropy(geom, [1.0, 4.0, 9.0], "axial", 10, 41)
        k = result.rows[0].values
        assert k[1] / k[0] == pytest.approx(0.5, rel=1e-12)
        assert k[2] / k[0] == pytest.approx(1.0 / 3.0, rel=1e-12)
        assert result.axis_name == "eps_rz"

    def test_unit_ratio_is_vacuum(self):
        geom = EccentricGeometry(5e-3, 0.25e-3, 1e-3)
        aniso = sweep_anisotropy(geom, [1.0], "transverse", 10, 41)
        ecc = sweep_eccentricity(
            geom, [0.2], 10, 41, families=(ModeFamily.TM,), modes_per_family=1
        )
        assert aniso.rows[0].values[0] == pytest.approx(
            ecc.rows[0].values[0], rel=1e-12
        )

    def test_bad_vary_rejected(self):
        with pytest.raises(ValueError):
            sweep_anisotropy(BASE, [1.0], "diagonal", 10, 41)
        with pytest.raises(ValueError):
            sweep_anisotropy(BASE, [1.0, -2.0], "axial", 10, 41)


class TestFrequencySweep:
    def test_fig5_style_sweep(self):
        # the two smallest TM eigenvalues of the lossy benchmark geometry;
        # 100 points keeps adjacent steps small through the cutoff region
        freqs = np.linspace(1e9, 10e9, 100)
        result = sweep_frequency(FIG5_GEOMETRY, FIG5_MEDIUM, freqs, 10, 41, modes=2)
        assert result.provenance["eigensolves"] == 1
        assert len(result.rows) == 2
        assert all(row.label.family is ModeFamily.TM for row in result.rows)
        assert len({row.label.key for row in result.rows}) == 2
        for row in result.rows:
            assert row.quantity == "k_z"
            assert np.all(row.values.imag > 0)  # lossy propagation
            step = np.abs(np.diff(row.values))
            assert np.all(step < 0.1 * np.abs(row.values[1:]))

    def test_lossless_above_cutoff_is_real(self):
        lossless = UniaxialMedium(eps_rs=5.6, eps_rz=4.6)
        freqs = np.linspace(8e9, 10e9, 5)  # well above the leading cutoffs
        result = sweep_frequency(FIG5_GEOMETRY, lossless, freqs, 10, 41, modes=1)
        assert np.all(result.rows[0].values.imag == 0)
        assert np.all(result.rows[0].values.real > 0)

    def test_invalid_axis(self):
        with pytest.raises(ValueError):
            sweep_frequency(FIG5_GEOMETRY, FIG5_MEDIUM, [2e9, 1e9], 10, 41)
        with pytest.raises(ValueError):
            sweep_frequency(FIG5_GEOMETRY, FIG5_MEDIUM, [-1e9, 1e9], 10, 41)

    def test_provenance_records_inputs(self):
        freqs = np.linspace(1e9, 2e9, 3)
        result = sweep_frequency(FIG5_GEOMETRY, FIG5_MEDIUM, freqs, 10, 41)
        prov = result.provenance
        assert prov["grid"] == {"M": 10, "N": 41}
        assert prov["geometry"]["r1_m"] == 10e-3
        assert prov["media"]["sigma_s"] == 0.38
        assert len(prov["wall_clock_s"]) == 1
