"""Command-line front end.

Subcommands: solve, sweep-ecc, sweep-aniso, sweep-freq, validate,
emit-map.  Run configurations are JSON files with millimeter/GHz units at
the boundary (converted to SI on ingestion); unknown keys are rejected.
CSV output uses 12 significant digits, comma separators, and a line feed
terminator; JSON output round-trips byte-identically through json.load
followed by the same canonical dump.

Exit codes: 0 success, 1 configuration error, 2 solver or validation
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

import numpy as np

from .assembly import assemble, dump_coordinate_triples
from .constants import EPS0
from .eigensolve import label_modes, solve_eigs
from .errors import ConfigError, EccoaxError
from .geometry import (
    EccentricGeometry,
    build_map,
    jacobian_inv,
    map_to_eccentric,
)
from .grid import build_grid
from .media import ModeFamily, UniaxialMedium
from .modes import mode_solution
from .reference import concentric_cutoffs
from .sweeps import SweepResult, sweep_anisotropy, sweep_eccentricity, sweep_frequency

_SCHEMA = {
    "geometry": {"r1_mm", "r0_mm", "d_mm"},
    "media": {"mu_rs", "mu_rz", "eps_rs", "eps_rz", "sigma_s", "sigma_z"},
    "grid": {"M", "N"},
    "solve": {"family", "num_modes"},
    "frequency": {"f_ghz", "f_start_ghz", "f_stop_ghz", "f_points"},
    "output": {"format", "path"},
}


@dataclass
class RunConfig:
    geometry: EccentricGeometry
    medium: UniaxialMedium
    M: int
    N: int
    families: list
    num_modes: int
    f_hz: float | None
    f_grid: np.ndarray | None
    out_format: str
    out_path: str | None
    raw: dict


def _require_number(section: str, key: str, value, integer: bool = False):
    if integer:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(f"{section}.{key} must be an integer, got {value!r}")
        return value
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{section}.{key} must be a number, got {value!r}")
    return float(value)


def load_config(path: str) -> RunConfig:
    """Read and validate a JSON run configuration (fail-loud)."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    for section, body in raw.items():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section {section!r}")
        if not isinstance(body, dict):
            raise ConfigError(f"config section {section!r} must be an object")
        for key in body:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {section}.{key}")

    if "geometry" not in raw:
        raise ConfigError("config requires a geometry section")
    g = raw["geometry"]
    for key in ("r1_mm", "r0_mm", "d_mm"):
        if key not in g:
            raise ConfigError(f"geometry.{key} is required")
    r1 = _require_number("geometry", "r1_mm", g["r1_mm"])
    r0 = _require_number("geometry", "r0_mm", g["r0_mm"])
    d = _require_number("geometry", "d_mm", g["d_mm"])
    if r1 <= 0 or r0 <= 0:
        raise ConfigError("config invariant violated: geometry radii must be positive")
    if d < 0:
        raise ConfigError("config invariant violated: d_mm must be >= 0")
    if d + r0 >= r1:
        raise ConfigError("config invariant violated: d_mm + r0_mm < r1_mm")
    geometry = EccentricGeometry(r1_outer=r1 * 1e-3, r0_inner=r0 * 1e-3, offset=d * 1e-3)

    m = raw.get("media", {})
    medium = UniaxialMedium(
        mu_rs=_require_number("media", "mu_rs", m.get("mu_rs", 1.0)),
        mu_rz=_require_number("media", "mu_rz", m.get("mu_rz", 1.0)),
        eps_rs=_require_number("media", "eps_rs", m.get("eps_rs", 1.0)),
        eps_rz=_require_number("media", "eps_rz", m.get("eps_rz", 1.0)),
        sigma_s=_require_number("media", "sigma_s", m.get("sigma_s", 0.0)),
        sigma_z=_require_number("media", "sigma_z", m.get("sigma_z", 0.0)),
    )

    gr = raw.get("grid", {})
    M = _require_number("grid", "M", gr.get("M", 10), integer=True)
    N = _require_number("grid", "N", gr.get("N", 41), integer=True)
    if M < 3:
        raise ConfigError("config invariant violated: M >= 3")
    if N < 5:
        raise ConfigError("config invariant violated: N >= 5")

    s = raw.get("solve", {})
    family = s.get("family", "both")
    if family == "both":
        families = [ModeFamily.TM, ModeFamily.TE]
    elif family in ("TM", "TE"):
        families = [ModeFamily(family)]
    else:
        raise ConfigError(f"solve.family must be 'TM', 'TE' or 'both', got {family!r}")
    num_modes = _require_number("solve", "num_modes", s.get("num_modes", 3), integer=True)
    if num_modes < 1:
        raise ConfigError("config invariant violated: num_modes >= 1")

    fr = raw.get("frequency", {})
    has_single = "f_ghz" in fr
    has_range = any(k in fr for k in ("f_start_ghz", "f_stop_ghz", "f_points"))
    if has_single and has_range:
        raise ConfigError(
            "frequency block must give f_ghz or the f_start_ghz/f_stop_ghz/f_points "
            "triple, not both"
        )
    f_hz = None
    f_grid = None
    if has_range:
        for key in ("f_start_ghz", "f_stop_ghz", "f_points"):
            if key not in fr:
                raise ConfigError(f"frequency.{key} is required for a frequency range")
        f_start = _require_number("frequency", "f_start_ghz", fr["f_start_ghz"])
        f_stop = _require_number("frequency", "f_stop_ghz", fr["f_stop_ghz"])
        f_points = _require_number("frequency", "f_points", fr["f_points"], integer=True)
        if not (0 < f_start < f_stop):
            raise ConfigError("config invariant violated: 0 < f_start_ghz < f_stop_ghz")
        if f_points < 2:
            raise ConfigError("config invariant violated: f_points >= 2")
        f_grid = np.linspace(f_start * 1e9, f_stop * 1e9, f_points)
    else:
        f_hz = _require_number("frequency", "f_ghz", fr.get("f_ghz", 1.0)) * 1e9
        if f_hz <= 0:
            raise ConfigError("config invariant violated: f_ghz > 0")

    o = raw.get("output", {})
    out_format = o.get("format", "csv")
    if out_format not in ("csv", "json"):
        raise ConfigError(f"output.format must be 'csv' or 'json', got {out_format!r}")
    out_path = o.get("path")
    if out_path is not None and not isinstance(out_path, str):
        raise ConfigError("output.path must be a string")

    return RunConfig(
        geometry=geometry,
        medium=medium,
        M=M,
        N=N,
        families=families,
        num_modes=num_modes,
        f_hz=f_hz,
        f_grid=f_grid,
        out_format=out_format,
        out_path=out_path,
        raw=raw,
    )


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _emit_csv(header: list[str], rows: list[list], path: str | None) -> None:
    text = ",".join(header) + "\n"
    for row in rows:
        text += ",".join(cell if isinstance(cell, str) else _fmt(cell) for cell in row)
        text += "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _emit_json(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _sibling_path(path: str | None, tag: str) -> str | None:
    if path is None:
        return None
    if "." in path.rsplit("/", 1)[-1]:
        stem, ext = path.rsplit(".", 1)
        return f"{stem}_{tag}.{ext}"
    return f"{path}_{tag}"


SOLVE_HEADER = [
    "label",
    "lambda_per_m2",
    "Re_krho_rad_per_m",
    "Im_krho_rad_per_m",
    "Re_kz_rad_per_m",
    "Im_kz_rad_per_m",
    "residual",
]


def cmd_solve(cfg: RunConfig, dump_prefix: str | None = None) -> int:
    if cfg.f_hz is None:
        raise ConfigError("solve requires frequency.f_ghz (a single frequency)")
    cmap = build_map(cfg.geometry)
    grid = build_grid(cmap.r0_mapped, cmap.r1_mapped, cfg.M, cfg.N)
    rows = []
    results_json = []
    for family in cfg.families:
        t0 = time.perf_counter()
        op = assemble(grid, cmap, family)
        t_asm = time.perf_counter() - t0
        if dump_prefix is not None:
            dump_coordinate_triples(op, f"{dump_prefix}_{family.value}")
        t0 = time.perf_counter()
        sol = solve_eigs(op, cfg.num_modes)
        labeled = label_modes(sol.pairs, grid, family, op=op)
        t_solve = time.perf_counter() - t0
        print(
            f"{family.value}: assembly {t_asm:.3f} s, solve {t_solve:.3f} s "
            f"({op.n} unknowns)",
            file=sys.stderr,
        )
        for pair, label in labeled:
            ms = mode_solution(label, pair.lam, cfg.medium, cfg.f_hz)
            rows.append(
                [
                    label.short(),
                    ms.lam,
                    ms.k_rho.real,
                    ms.k_rho.imag,
                    ms.k_z.real,
                    ms.k_z.imag,
                    pair.residual,
                ]
            )
            results_json.append(
                {
                    "label": label.short(),
                    "family": family.value,
                    "m": label.m,
                    "n": label.n,
                    "parity": label.parity,
                    "ambiguous": label.ambiguous,
                    "lambda_per_m2": ms.lam,
                    "Re_krho_rad_per_m": ms.k_rho.real,
                    "Im_krho_rad_per_m": ms.k_rho.imag,
                    "Re_kz_rad_per_m": ms.k_z.real,
                    "Im_kz_rad_per_m": ms.k_z.imag,
                    "residual": pair.residual,
                }
            )
    if cfg.out_format == "csv":
        _emit_csv(SOLVE_HEADER, rows, cfg.out_path)
    else:
        _emit_json(
            {"config": cfg.raw, "provenance": {"command": "solve"}, "results": results_json},
            cfg.out_path,
        )
    return 0


def _sweep_mode_header(result: SweepResult) -> list[tuple[str, object]]:
    """Column labels for sweep rows; parity is dropped when (family, m, n)
    is unique among the emitted modes."""
    counts: dict[str, int] = {}
    for row in result.rows:
        base = row.label.short(with_parity=False)
        counts[base] = counts.get(base, 0) + 1
    out = []
    for row in result.rows:
        base = row.label.short(with_parity=False)
        out.append((row.label.short() if counts[base] > 1 else base, row))
    return out


def _emit_sweep_csv(result: SweepResult, axis_header: str, path: str | None) -> None:
    named = _sweep_mode_header(result)
    complex_valued = any(np.any(np.abs(row.values.imag) > 0) for row in result.rows)
    header = [axis_header]
    for name, row in named:
        if complex_valued:
            header.append(f"Re_{row.quantity.replace('_', '')}_{name}_rad_per_m")
            header.append(f"Im_{row.quantity.replace('_', '')}_{name}_rad_per_m")
        else:
            header.append(f"{name}_{row.quantity.replace('_', '')}_rad_per_m")
    rows = []
    for col, x in enumerate(result.axis):
        row = [x]
        for _, r in named:
            if complex_valued:
                row.extend([r.values[col].real, r.values[col].imag])
            else:
                row.append(r.values[col].real)
        rows.append(row)
    _emit_csv(header, rows, path)


def _sweep_json_payload(cfg: RunConfig, result: SweepResult) -> dict:
    return {
        "config": cfg.raw,
        "provenance": result.provenance,
        "results": {
            "axis_name": result.axis_name,
            "axis": [float(x) for x in result.axis],
            "rows": [
                {
                    "label": row.label.short(),
                    "quantity": row.quantity,
                    "re": [v.real for v in row.values],
                    "im": [v.imag for v in row.values],
                }
                for row in result.rows
            ],
        },
    }


def cmd_sweep_ecc(cfg: RunConfig, offsets, modes: int) -> int:
    result = sweep_eccentricity(
        cfg.geometry, offsets, cfg.M, cfg.N, families=cfg.families, modes_per_family=modes
    )
    if cfg.out_format == "json":
        _emit_json(_sweep_json_payload(cfg, result), cfg.out_path)
        return 0
    for family in cfg.families:
        sub = SweepResult(
            axis_name=result.axis_name,
            axis=result.axis,
            rows=[r for r in result.rows if r.label.family is family],
            provenance=result.provenance,
        )
        path = (
            _sibling_path(cfg.out_path, family.value)
            if len(cfg.families) > 1
            else cfg.out_path
        )
        _emit_sweep_csv(sub, "d_over_r1", path)
    return 0


def cmd_sweep_aniso(cfg: RunConfig, ratios, vary: str, modes: int) -> int:
    result = sweep_anisotropy(cfg.geometry, ratios, vary, cfg.M, cfg.N, modes=modes)
    if cfg.out_format == "json":
        _emit_json(_sweep_json_payload(cfg, result), cfg.out_path)
    else:
        _emit_sweep_csv(result, result.axis_name, cfg.out_path)
    return 0


def cmd_sweep_freq(cfg: RunConfig, modes: int) -> int:
    if cfg.f_grid is None:
        raise ConfigError(
            "sweep-freq requires frequency.f_start_ghz/f_stop_ghz/f_points"
        )
    result = sweep_frequency(cfg.geometry, cfg.medium, cfg.f_grid, cfg.M, cfg.N, modes=modes)
    if cfg.out_format == "json":
        _emit_json(_sweep_json_payload(cfg, result), cfg.out_path)
        return 0
    ghz = SweepResult(
        axis_name="f_ghz",
        axis=result.axis / 1e9,
        rows=result.rows,
        provenance=result.provenance,
    )
    _emit_sweep_csv(ghz, "f_ghz", cfg.out_path)
    return 0


def _fd_jacobian(cmap, rho, phi, step):
    """Finite-difference area scaling of the map at one concentric point."""

    def z_at(x, y):
        r = np.hypot(x, y)
        p = np.arctan2(y, x)
        rt, pt = map_to_eccentric(cmap, r, p)
        return rt * np.exp(1j * pt)

    x, y = rho * np.cos(phi), rho * np.sin(phi)
    fx = (z_at(x + step, y) - z_at(x - step, y)) / (2.0 * step)
    fy = (z_at(x, y + step) - z_at(x, y - step)) / (2.0 * step)
    return (np.conj(fx) * fy).imag


def cmd_validate(cfg: RunConfig) -> int:
    lines = []
    ok = True

    # map fidelity: finite differences of the point map against the
    # closed-form area weight, 1000 seeded interior points
    cmap = build_map(cfg.geometry)
    rng = np.random.RandomState(814)
    r0m, r1m = cmap.r0_mapped, cmap.r1_mapped
    rho = r0m + (r1m - r0m) * rng.uniform(0.05, 0.95, size=1000)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=1000)
    step = 1e-7 * r1m
    worst = 0.0
    for r, p in zip(rho, phi):
        jac = jacobian_inv(cmap, r, p)
        fd = _fd_jacobian(cmap, r, p, step)
        worst = max(worst, abs(fd - jac) / jac)
    passed = worst <= 1e-5
    ok &= passed
    lines.append(
        f"jacobian-consistency: {'PASS' if passed else 'FAIL'} "
        f"max_rel_err={worst:.6e} (threshold 1.0e-05)"
    )

    # concentric reduction against the Bessel cross-product root
    r1, r0 = cfg.geometry.r1_outer, cfg.geometry.r0_inner
    k_oracle = concentric_cutoffs(r0, r1, ModeFamily.TM, 0, 1)[0].k
    grid = build_grid(r0, r1, 40, 161)
    cmap0 = build_map(EccentricGeometry(r1_outer=r1, r0_inner=r0, offset=0.0))
    op = assemble(grid, cmap0, ModeFamily.TM)
    lam = solve_eigs(op, 1).pairs[0].lam
    rel = abs(np.sqrt(-lam) - k_oracle) / k_oracle
    passed = rel <= 5e-3
    ok &= passed
    lines.append(
        f"concentric-oracle: {'PASS' if passed else 'FAIL'} "
        f"rel_err={rel:.6e} k_oracle={k_oracle:.6e} (threshold 5.0e-03)"
    )

    # observed order of the first TM eigenvalue under mesh refinement:
    # errors must fall monotonically, and the finest mesh pair gives the
    # order estimate (the coarse pair is preasymptotic near a thin inner
    # conductor)
    errs = []
    hs = []
    for M, N in ((10, 41), (20, 81), (40, 161)):
        grid = build_grid(r0, r1, M, N)
        op = assemble(grid, cmap0, ModeFamily.TM)
        lam = solve_eigs(op, 1).pairs[0].lam
        errs.append(abs(lam - (-k_oracle * k_oracle)) / (k_oracle * k_oracle))
        hs.append(grid.h_rho)
    order = np.log(errs[1] / errs[2]) / np.log(hs[1] / hs[2])
    passed = errs[0] > errs[1] > errs[2] and 1.7 <= order <= 2.3
    ok &= passed
    lines.append(
        f"convergence-order: {'PASS' if passed else 'FAIL'} "
        f"order={order:.4f} errors=({errs[0]:.6e}, {errs[1]:.6e}, {errs[2]:.6e}) "
        f"(window [1.7, 2.3])"
    )

    sys.stdout.write("\n".join(lines) + "\n")
    return 0 if ok else 2


def cmd_emit_map(cfg: RunConfig) -> int:
    cmap = build_map(cfg.geometry)
    grid = build_grid(cmap.r0_mapped, cmap.r1_mapped, cfg.M, cfg.N)
    header = [
        "i",
        "j",
        "rho_m",
        "phi_rad",
        "jacobian_inv",
        "rho_tilde_m",
        "phi_tilde_rad",
    ]
    rows = []
    for i in range(1, grid.M + 1):
        r = grid.rho_nodes[i - 1]
        for j in range(1, grid.N + 1):
            p = grid.phi_nodes[j - 1]
            rt, pt = map_to_eccentric(cmap, r, p)
            rows.append([str(i), str(j), r, p, jacobian_inv(cmap, r, p), rt, pt])
    _emit_csv(header, rows, cfg.out_path)
    return 0


class _Parser(argparse.ArgumentParser):
    """Argument errors are configuration errors: exit code 1."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="eccoax",
        description="Eigenmode solver for eccentric coaxial waveguides "
        "filled with lossy uniaxially anisotropic media.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, grid_flags=True):
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--output", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="output format override")
        if grid_flags:
            p.add_argument("-M", type=int, help="radial node count override")
            p.add_argument("-N", type=int, help="azimuthal node count override")
            p.add_argument("--modes", type=int, help="number of modes override")

    p = sub.add_parser("solve", help="modes of one configuration at one frequency")
    add_common(p)
    p.add_argument(
        "--dump-matrices",
        metavar="PREFIX",
        help="write A and B as 'row col value' text files under this prefix",
    )

    p = sub.add_parser("sweep-ecc", help="radial wavenumbers vs offset ratio")
    add_common(p)
    p.add_argument(
        "--offsets",
        default="0.05,0.10,0.15,0.20",
        help="comma-separated d/r1 ratios",
    )

    p = sub.add_parser("sweep-aniso", help="TM radial wavenumbers vs permittivity")
    add_common(p)
    p.add_argument("--ratios", default="1,2,5,10", help="comma-separated permittivities")
    p.add_argument(
        "--vary",
        choices=("transverse", "axial"),
        default="transverse",
        help="which permittivity component the ratios apply to",
    )

    p = sub.add_parser("sweep-freq", help="TM axial wavenumbers vs frequency")
    add_common(p)

    p = sub.add_parser("validate", help="oracle, convergence, and map checks")
    add_common(p, grid_flags=False)

    p = sub.add_parser("emit-map", help="grid nodes, weights, physical coordinates")
    add_common(p)
    return parser


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"{flag} must be a comma-separated number list: {exc}") from exc
    if not values:
        raise ConfigError(f"{flag} must contain at least one value")
    return values


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config)
        if getattr(args, "M", None) is not None:
            if args.M < 3:
                raise ConfigError("config invariant violated: M >= 3")
            cfg.M = args.M
        if getattr(args, "N", None) is not None:
            if args.N < 5:
                raise ConfigError("config invariant violated: N >= 5")
            cfg.N = args.N
        if getattr(args, "modes", None) is not None:
            if args.modes < 1:
                raise ConfigError("config invariant violated: num_modes >= 1")
            cfg.num_modes = args.modes
        if getattr(args, "format", None):
            cfg.out_format = args.format
        if getattr(args, "output", None):
            cfg.out_path = args.output

        if args.command == "solve":
            return cmd_solve(cfg, dump_prefix=args.dump_matrices)
        if args.command == "sweep-ecc":
            offsets = _parse_float_list(args.offsets, "--offsets")
            return cmd_sweep_ecc(cfg, offsets, cfg.num_modes)
        if args.command == "sweep-aniso":
            ratios = _parse_float_list(args.ratios, "--ratios")
            return cmd_sweep_aniso(cfg, ratios, args.vary, cfg.num_modes)
        if args.command == "sweep-freq":
            return cmd_sweep_freq(cfg, cfg.num_modes)
        if args.command == "validate":
            return cmd_validate(cfg)
        if args.command == "emit-map":
            return cmd_emit_map(cfg)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"eccoax: config error: {exc}", file=sys.stderr)
        return 1
    except EccoaxError as exc:
        print(f"eccoax: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
