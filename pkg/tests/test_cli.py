import json
import time

import numpy as np
import pytest

from eccoax import ModeFamily, concentric_cutoffs
from eccoax.cli import main

TABLE_I_CONFIG = {
    "geometry": {"r1_mm": 5.0, "r0_mm": 0.25, "d_mm": 1.0},
    "media": {"eps_rs": 5.0, "eps_rz": 1.0},
    "grid": {"M": 10, "N": 41},
    "solve": {"family": "TM", "num_modes": 3},
    "frequency": {"f_ghz": 1.0},
}

SOLVE_HEADER = (
    "label,lambda_per_m2,Re_krho_rad_per_m,Im_krho_rad_per_m,"
    "Re_kz_rad_per_m,Im_kz_rad_per_m,residual"
)


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


class TestSolve:
    def test_table_i_case_under_one_second(self, tmp_path, capsys):
        cfg = write_config(tmp_path, TABLE_I_CONFIG)
        t0 = time.perf_counter()
        rc = main(["solve", "--config", cfg])
        elapsed = time.perf_counter() - t0
        assert rc == 0
        assert elapsed < 1.0
        out = capsys.readouterr()
        lines = out.out.strip().split("\n")
        assert lines[0] == SOLVE_HEADER
        assert len(lines) == 4  # header + three modes
        assert "assembly" in out.err and "solve" in out.err

    def test_concentric_vacuum_matches_oracle(self, tmp_path, capsys):
        payload = {
            "geometry": {"r1_mm": 5.0, "r0_mm": 0.25, "d_mm": 0.0},
            "grid": {"M": 40, "N": 161},
            "solve": {"family": "TM", "num_modes": 1},
        }
        cfg = write_config(tmp_path, payload)
        rc = main(["solve", "--config", cfg])
        assert rc == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == SOLVE_HEADER
        fields = lines[1].split(",")
        k_rho = float(fields[2])
        k_ref = concentric_cutoffs(0.25e-3, 5e-3, ModeFamily.TM, 0, 1)[0].k
        assert k_rho == pytest.approx(k_ref, rel=5e-3)

    def test_csv_file_output_and_sig_digits(self, tmp_path):
        out = tmp_path / "modes.csv"
        cfg = write_config(
            tmp_path, {**TABLE_I_CONFIG, "output": {"format": "csv", "path": str(out)}}
        )
        assert main(["solve", "--config", cfg]) == 0
        text = out.read_text()
        assert "\r" not in text
        assert text.endswith("\n")
        lines = text.strip().split("\n")
        value = lines[1].split(",")[1]
        mantissa = value.lstrip("-").replace(".", "").replace("e", " ").split()[0]
        assert len(mantissa.lstrip("0")) <= 12

    def test_json_round_trip_byte_identical(self, tmp_path):
        out = tmp_path / "modes.json"
        cfg = write_config(
            tmp_path, {**TABLE_I_CONFIG, "output": {"format": "json", "path": str(out)}}
        )
        assert main(["solve", "--config", cfg]) == 0
        raw = out.read_text()
        payload = json.loads(raw)
        assert set(payload) == {"config", "provenance", "results"}
        assert json.dumps(payload, sort_keys=True, indent=2) + "\n" == raw

    def test_dump_matrices(self, tmp_path):
        cfg = write_config(
            tmp_path,
            {**TABLE_I_CONFIG, "output": {"path": str(tmp_path / "o.csv")}},
        )
        prefix = str(tmp_path / "dump")
        assert main(["solve", "--config", cfg, "--dump-matrices", prefix]) == 0
        a_lines = (tmp_path / "dump_TM_A.txt").read_text().strip().split("\n")
        b_lines = (tmp_path / "dump_TM_B.txt").read_text().strip().split("\n")
        assert len(b_lines) == 320
        r, c, v = a_lines[0].split()
        int(r), int(c), float(v)
        assert all(float(line.split()[2]) > 0 for line in b_lines)

    def test_grid_and_mode_overrides(self, tmp_path, capsys):
        cfg = write_config(tmp_path, TABLE_I_CONFIG)
        rc = main(["solve", "--config", cfg, "-M", "12", "-N", "25", "--modes", "1"])
        assert rc == 0
        out = capsys.readouterr()
        assert len(out.out.strip().split("\n")) == 2
        assert "(240 unknowns)" in out.err  # (12-2)*(25-1)


class TestConfigErrors:
    def test_overlapping_conductors_exit_1(self, tmp_path, capsys):
        payload = {"geometry": {"r1_mm": 5.0, "r0_mm": 0.25, "d_mm": 4.9}}
        cfg = write_config(tmp_path, payload)
        assert main(["solve", "--config", cfg]) == 1
        assert "d_mm + r0_mm < r1_mm" in capsys.readouterr().err

    def test_unknown_key_exit_1(self, tmp_path, capsys):
        payload = {
            "geometry": {"r1_mm": 5.0, "r0_mm": 0.25, "d_mm": 1.0, "radius": 3.0}
        }
        cfg = write_config(tmp_path, payload)
        assert main(["solve", "--config", cfg]) == 1
        assert "geometry.radius" in capsys.readouterr().err

    def test_unknown_section_exit_1(self, tmp_path, capsys):
        payload = {**TABLE_I_CONFIG, "mesh": {"M": 10}}
        cfg = write_config(tmp_path, payload)
        assert main(["solve", "--config", cfg]) == 1
        assert "mesh" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        assert main(["solve", "--config", str(tmp_path / "nope.json")]) == 1

    def test_bad_grid_exit_1(self, tmp_path, capsys):
        payload = {**TABLE_I_CONFIG, "grid": {"M": 2, "N": 41}}
        cfg = write_config(tmp_path, payload)
        assert main(["solve", "--config", cfg]) == 1
        assert "M >= 3" in capsys.readouterr().err

    def test_usage_error_exit_1(self, capsys):
        assert main(["solve"]) == 1  # --config is required


class TestSweepCommands:
    def test_sweep_ecc_writes_one_csv_per_family(self, tmp_path):
        out = tmp_path / "fig2.csv"
        payload = {
            "geometry": {"r1_mm": 5.0, "r0_mm": 0.25, "d_mm": 1.0},
            "grid": {"M": 10, "N": 41},
            "solve": {"family": "both", "num_modes": 3},
            "output": {"path": str(out)},
        }
        cfg = write_config(tmp_path, payload)
        rc = main(["sweep-ecc", "--config", cfg, "--offsets", "0.05,0.10,0.15,0.20"])
        assert rc == 0
        for fam in ("TM", "TE"):
            text = (tmp_path / f"fig2_{fam}.csv").read_text()
            lines = text.strip().split("\n")
            header = lines[0].split(",")
            assert header[0] == "d_over_r1"
            assert len(header) == 4  # axis + three modes
            assert all("krho_rad_per_m" in h for h in header[1:])
            assert len(lines) == 5  # header + four offsets
            assert [float(r.split(",")[0]) for r in lines[1:]] == [
                0.05,
                0.10,
                0.15,
                0.20,
            ]

    def test_sweep_aniso_single_ratio_matches_solve(self, tmp_path, capsys):
        payload = {
            "geometry": {"r1_mm": 5.0, "r0_mm": 0.25, "d_mm": 1.0},
            "grid": {"M": 10, "N": 41},
            "solve": {"family": "TM", "num_modes": 1},
        }
        cfg = write_config(tmp_path, payload)
        assert main(["sweep-aniso", "--config", cfg, "--ratios", "1"]) == 0
        sweep_out = capsys.readouterr().out.strip().split("\n")
        assert sweep_out[0].split(",")[0] == "eps_rs"
        k_sweep = float(sweep_out[1].split(",")[1])

        assert main(["solve", "--config", cfg]) == 0
        solve_out = capsys.readouterr().out.strip().split("\n")
        k_solve = float(solve_out[1].split(",")[2])
        assert k_sweep == pytest.approx(k_solve, rel=1e-12)

    def test_sweep_freq_headers(self, tmp_path, capsys):
        payload = {
            "geometry": {"r1_mm": 10.0, "r0_mm": 2.0, "d_mm": 3.0},
            "media": {
                "eps_rs": 5.6,
                "eps_rz": 4.6,
                "sigma_s": 0.38,
                "sigma_z": 0.34,
            },
            "grid": {"M": 10, "N": 41},
            "solve": {"family": "TM", "num_modes": 2},
            "frequency": {"f_start_ghz": 1.0, "f_stop_ghz": 10.0, "f_points": 10},
        }
        cfg = write_config(tmp_path, payload)
        assert main(["sweep-freq", "--config", cfg]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        header = lines[0].split(",")
        assert header[0] == "f_ghz"
        assert len(header) == 5  # axis + Re/Im per mode
        assert header[1].startswith("Re_kz_") and header[1].endswith("_rad_per_m")
        assert header[2].startswith("Im_kz_")
        assert len(lines) == 11
        assert float(lines[1].split(",")[0]) == 1.0
        assert float(lines[-1].split(",")[0]) == 10.0

    def test_sweep_freq_requires_range(self, tmp_path, capsys):
        cfg = write_config(tmp_path, TABLE_I_CONFIG)
        assert main(["sweep-freq", "--config", cfg]) == 1
        assert "f_start_ghz" in capsys.readouterr().err


class TestValidate:
    def test_passes_and_is_deterministic(self, tmp_path, capsys):
        payload = {
            "geometry": {"r1_mm": 5.0, "r0_mm": 0.25, "d_mm": 1.0},
        }
        cfg = write_config(tmp_path, payload)
        assert main(["validate", "--config", cfg]) == 0
        first = capsys.readouterr().out
        assert main(["validate", "--config", cfg]) == 0
        second = capsys.readouterr().out
        assert first == second
        assert first.count("PASS") == 3
        assert "jacobian-consistency" in first
        assert "concentric-oracle" in first
        assert "convergence-order" in first

    def test_concentric_geometry_also_passes(self, tmp_path, capsys):
        payload = {"geometry": {"r1_mm": 5.0, "r0_mm": 0.25, "d_mm": 0.0}}
        cfg = write_config(tmp_path, payload)
        assert main(["validate", "--config", cfg]) == 0
        assert capsys.readouterr().out.count("PASS") == 3


class TestEmitMap:
    def test_nodes_weights_and_coordinates(self, tmp_path):
        out = tmp_path / "map.csv"
        payload = {
            "geometry": {"r1_mm": 5.0, "r0_mm": 0.25, "d_mm": 1.0},
            "grid": {"M": 4, "N": 6},
            "output": {"path": str(out)},
        }
        cfg = write_config(tmp_path, payload)
        assert main(["emit-map", "--config", cfg]) == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "i,j,rho_m,phi_rad,jacobian_inv,rho_tilde_m,phi_tilde_rad"
        assert len(lines) == 1 + 4 * 6
        from eccoax import EccentricGeometry, build_map, jacobian_inv

        cmap = build_map(EccentricGeometry(5e-3, 0.25e-3, 1e-3))
        first = lines[1].split(",")
        assert int(first[0]) == 1 and int(first[1]) == 1
        assert float(first[2]) == pytest.approx(cmap.r0_mapped, rel=1e-12)
        assert float(first[4]) == pytest.approx(
            jacobian_inv(cmap, cmap.r0_mapped, 0.0), rel=1e-12
        )
        # outer corner row maps onto the outer conductor
        last = lines[-1].split(",")
        assert float(last[5]) == pytest.approx(5e-3, rel=1e-9)
