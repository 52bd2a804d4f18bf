"""Parameter sweeps over eccentricity, anisotropy, and frequency.

The central economy: eigenvalues depend only on geometry and grid.
Sweeps that keep the geometry fixed (anisotropy, frequency) therefore run
exactly one eigensolve and rescale wavenumbers per point; only the
eccentricity sweep re-solves, once per offset per family.  Provenance
records the eigensolve count so callers can assert the reuse contract.
"""

from __future__ import annotations

import datetime
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .assembly import assemble
from .eigensolve import EigenPair, ModeLabel, label_modes, solve_eigs
from .errors import AmbiguousLabel
from .geometry import EccentricGeometry, build_map
from .grid import build_grid
from .media import ModeFamily, UniaxialMedium, VACUUM
from .modes import axial_wavenumber, radial_wavenumber

#: Frequency used to evaluate lossless anisotropy ratios, where the value
#: is irrelevant; 1 GHz keeps any accidental lossy input visible.
NOMINAL_FREQUENCY = 1.0e9


@dataclass
class SweepRow:
    """One mode's values along the sweep axis."""

    label: ModeLabel
    quantity: str
    values: np.ndarray


@dataclass
class SweepResult:
    axis_name: str
    axis: np.ndarray
    rows: list[SweepRow]
    provenance: dict = field(default_factory=dict)

    def row(self, short: str) -> SweepRow:
        """Look up a row by its short label string, e.g. 'TM01_even'."""
        for r in self.rows:
            if r.label.short() == short or r.label.short(with_parity=False) == short:
                return r
        raise KeyError(short)


def _provenance(geom, M, N, medium, modes, eigensolves, per_point):
    return {
        "geometry": {
            "r1_m": geom.r1_outer,
            "r0_m": geom.r0_inner,
            "offset_m": geom.offset,
        },
        "grid": {"M": M, "N": N},
        "media": {
            "mu_rs": medium.mu_rs,
            "mu_rz": medium.mu_rz,
            "eps_rs": medium.eps_rs,
            "eps_rz": medium.eps_rz,
            "sigma_s": medium.sigma_s,
            "sigma_z": medium.sigma_z,
        }
        if medium is not None
        else None,
        "modes": modes,
        "eigensolves": eigensolves,
        "wall_clock_s": per_point,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _solve_labeled(geom: EccentricGeometry, M: int, N: int, family: ModeFamily, count: int):
    """Map, grid, assemble, solve, and label one configuration."""
    cmap = build_map(geom)
    grid = build_grid(cmap.r0_mapped, cmap.r1_mapped, M, N)
    op = assemble(grid, cmap, family)
    sol = solve_eigs(op, count)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AmbiguousLabel)
        labeled = label_modes(sol.pairs, grid, family, op=op)
    return labeled


def sweep_eccentricity(
    base: EccentricGeometry,
    offsets,
    M: int,
    N: int,
    families=(ModeFamily.TE, ModeFamily.TM),
    modes_per_family: int = 3,
    parallel: bool = True,
) -> SweepResult:
    """Radial wavenumbers of the leading modes versus offset ratio d/r1.

    ``offsets`` are offset-to-outer-radius ratios; the inner radius and
    outer radius come from ``base``.  Each offset is an independent
    geometry, so each one costs one eigensolve per family.  The medium is
    vacuum, where k_rho = sqrt(-lambda) for both families.

    Mode curves are connected across offsets by label; a label that fails
    to reappear (or was flagged ambiguous) falls back to continuing the
    nearest eigenvalue.
    """
    offsets = np.asarray(list(offsets), dtype=float)
    families = list(families)
    omega = 2.0 * np.pi * NOMINAL_FREQUENCY

    def solve_point(ratio: float):
        t0 = time.perf_counter()
        geom = EccentricGeometry(
            r1_outer=base.r1_outer, r0_inner=base.r0_inner, offset=ratio * base.r1_outer
        )
        out = {fam: _solve_labeled(geom, M, N, fam, modes_per_family) for fam in families}
        return out, time.perf_counter() - t0

    if parallel and len(offsets) > 1:
        with ThreadPoolExecutor(max_workers=min(4, len(offsets))) as pool:
            results = list(pool.map(solve_point, offsets))
    else:
        results = [solve_point(r) for r in offsets]

    rows: list[SweepRow] = []
    for fam in families:
        first = results[0][0][fam]
        fam_rows = [
            SweepRow(
                label=label,
                quantity="k_rho",
                values=np.zeros(len(offsets), dtype=complex),
            )
            for _, label in first
        ]
        for col, (per_fam, _) in enumerate(results):
            labeled = per_fam[fam]
            k_of = {
                id(pair): radial_wavenumber(pair.lam, VACUUM, fam, omega)
                for pair, _ in labeled
            }
            available = list(labeled)
            # exact label matches first
            for row in fam_rows:
                hit = next(
                    (
                        t
                        for t in available
                        if t[1].key == row.label.key and not t[1].ambiguous
                    ),
                    None,
                )
                if hit is not None:
                    row.values[col] = k_of[id(hit[0])]
                    available.remove(hit)
                else:
                    row.values[col] = np.nan
            # nearest-eigenvalue continuation for anything left over
            for row in fam_rows:
                if not np.isnan(row.values[col]) or not available:
                    continue
                prev = row.values[col - 1] if col > 0 else 0.0
                hit = min(available, key=lambda t: abs(k_of[id(t[0])] - prev))
                row.values[col] = k_of[id(hit[0])]
                available.remove(hit)
        rows.extend(fam_rows)

    per_point = [t for _, t in results]
    prov = _provenance(
        base, M, N, VACUUM, modes_per_family, len(offsets) * len(families), per_point
    )
    return SweepResult(axis_name="d_over_r1", axis=offsets, rows=rows, provenance=prov)


def sweep_anisotropy(
    geom: EccentricGeometry,
    ratios,
    vary: str,
    M: int,
    N: int,
    modes: int = 1,
) -> SweepResult:
    """TM radial wavenumbers versus a lossless permittivity component.

    ``vary='transverse'`` sweeps eps_rs with eps_rz = 1, scaling each
    k_rho by sqrt(eps_rs); ``vary='axial'`` sweeps eps_rz with eps_rs = 1,
    scaling by 1/sqrt(eps_rz).  The geometry eigensolve runs exactly once.
    """
    if vary not in ("transverse", "axial"):
        raise ValueError(f"vary must be 'transverse' or 'axial', got {vary!r}")
    ratios = np.asarray(list(ratios), dtype=float)
    if np.any(ratios <= 0):
        raise ValueError("permittivity ratios must be positive")
    omega = 2.0 * np.pi * NOMINAL_FREQUENCY

    t0 = time.perf_counter()
    labeled = _solve_labeled(geom, M, N, ModeFamily.TM, modes)
    solve_time = time.perf_counter() - t0

    rows = []
    for pair, label in labeled:
        values = np.empty(len(ratios), dtype=complex)
        for col, r in enumerate(ratios):
            medium = (
                UniaxialMedium(eps_rs=r, eps_rz=1.0)
                if vary == "transverse"
                else UniaxialMedium(eps_rs=1.0, eps_rz=r)
            )
            values[col] = radial_wavenumber(pair.lam, medium, ModeFamily.TM, omega)
        rows.append(SweepRow(label=label, quantity="k_rho", values=values))

    prov = _provenance(geom, M, N, None, modes, 1, [solve_time])
    prov["vary"] = vary
    axis_name = "eps_rs" if vary == "transverse" else "eps_rz"
    return SweepResult(axis_name=axis_name, axis=ratios, rows=rows, provenance=prov)


def sweep_frequency(
    geom: EccentricGeometry,
    medium: UniaxialMedium,
    f_range,
    M: int,
    N: int,
    modes: int = 2,
) -> SweepResult:
    """Complex axial wavenumbers of the leading TM modes versus frequency.

    Frequency only moves the imaginary part of the complex permittivity,
    so the geometry eigensolve runs once and every point reuses it.
    """
    f_range = np.asarray(list(f_range), dtype=float)
    if np.any(f_range <= 0) or np.any(np.diff(f_range) <= 0):
        raise ValueError("f_range must be positive and ascending")

    t0 = time.perf_counter()
    labeled = _solve_labeled(geom, M, N, ModeFamily.TM, modes)
    solve_time = time.perf_counter() - t0

    rows = []
    for pair, label in labeled:
        kz = np.empty(len(f_range), dtype=complex)
        for col, f in enumerate(f_range):
            omega = 2.0 * np.pi * f
            k_rho = radial_wavenumber(pair.lam, medium, ModeFamily.TM, omega)
            kz[col] = axial_wavenumber(k_rho, medium, omega)
        rows.append(SweepRow(label=label, quantity="k_z", values=kz))

    prov = _provenance(geom, M, N, medium, modes, 1, [solve_time])
    return SweepResult(axis_name="f_hz", axis=f_range, rows=rows, provenance=prov)
