"""Shared fixtures and independent oracle helpers.

The oracle helpers deliberately avoid the package's own computation
paths: inverse points come from numpy's polynomial root finder, and map
Jacobians from central finite differences of the point map.
"""

import numpy as np
import pytest

from eccoax import EccentricGeometry, map_to_eccentric


def oracle_inverse_points(r1, r0, d):
    """Roots of x**2 + c*x + r1**2 = 0 via np.roots."""
    c = (r0 * r0 - r1 * r1 - d * d) / d
    roots = np.sort(np.roots([1.0, c, r1 * r1]).real)
    return roots[0], roots[1], c


def fd_jacobian(cmap, rho, phi, step):
    """Area scaling of the concentric-to-physical map by central differences."""

    def z_at(x, y):
        r = np.hypot(x, y)
        p = np.arctan2(y, x)
        rt, pt = map_to_eccentric(cmap, r, p)
        return rt * np.exp(1j * pt)

    x, y = rho * np.cos(phi), rho * np.sin(phi)
    fx = (z_at(x + step, y) - z_at(x - step, y)) / (2.0 * step)
    fy = (z_at(x, y + step) - z_at(x, y - step)) / (2.0 * step)
    return (np.conj(fx) * fy).imag


@pytest.fixture
def fig2_geometry():
    """5 mm outer conductor, 0.25 mm inner, offset 20 percent of r1."""
    return EccentricGeometry(r1_outer=5e-3, r0_inner=0.25e-3, offset=1e-3)


@pytest.fixture
def random_geometries():
    """1000 valid geometries spanning several decades of size."""
    rng = np.random.RandomState(20240401)
    geoms = []
    while len(geoms) < 1000:
        r1 = 10.0 ** rng.uniform(-4, 0)
        r0 = r1 * rng.uniform(0.01, 0.8)
        d = rng.uniform(1e-6, 0.999) * (r1 - r0) * 0.999
        if d < 1e-8 * r1:
            continue
        geoms.append(EccentricGeometry(r1_outer=r1, r0_inner=r0, offset=d))
    return geoms
