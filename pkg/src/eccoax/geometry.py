"""Conformal map between the eccentric and the concentric annulus.

The physical cross section has an outer conductor of radius ``r1`` centered
at the origin and an inner conductor of radius ``r0`` whose center is
displaced by ``d`` along the positive x axis.  The two conductor circles
share a pair of inverse points ``x1 < x2`` on the symmetry axis, the roots
of ``x**2 + c*x + r1**2 = 0`` with ``c = (r0**2 - r1**2 - d**2)/d``.

The Mobius transformation anchored at the inverse points,

    w(z) = x2 * (z - x1) / (z - x2),

sends the outer circle onto the circle ``|w| = r1`` and the inner circle
onto a concentric circle ``|w| = r0_mapped``.  The scale factor ``x2``
equals ``r1 / |T(r1)|`` for ``T(z) = (z - x1)/(z - x2)``, so the outer
radius is preserved.  The map is an involution: applying the same formula
to a concentric point returns the physical point.

All lengths are SI meters and all angles radians.  Values are immutable
and every function here is pure, so concurrent use needs no locking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometry, InvalidGeometry, OutOfDomain

#: Offsets below this fraction of the outer radius are treated as
#: concentric; c diverges like -(r1**2 - r0**2)/d as d -> 0.
DEGENERACY_RATIO = 1e-9


@dataclass(frozen=True)
class EccentricGeometry:
    """Physical description of the eccentric coaxial cross section.

    Parameters
    ----------
    r1_outer : float
        Outer conductor radius, m.
    r0_inner : float
        Inner conductor radius, m.
    offset : float
        Displacement of the inner conductor center along the symmetry
        axis, m.  Zero gives a concentric guide.
    """

    r1_outer: float
    r0_inner: float
    offset: float

    def __post_init__(self):
        if not (self.r0_inner > 0 and self.r1_outer > 0):
            raise InvalidGeometry(
                f"radii must be positive, got r0={self.r0_inner}, r1={self.r1_outer}"
            )
        if self.offset < 0:
            raise InvalidGeometry(f"offset must be >= 0, got {self.offset}")
        if self.offset + self.r0_inner >= self.r1_outer:
            raise InvalidGeometry(
                "inner conductor must lie strictly inside the outer: "
                f"offset + r0 = {self.offset + self.r0_inner} >= r1 = {self.r1_outer}"
            )

    @property
    def is_degenerate(self) -> bool:
        """True when the offset is below the concentric threshold."""
        return self.offset < DEGENERACY_RATIO * self.r1_outer


@dataclass(frozen=True)
class ConcentricMap:
    """Derived map data for one geometry.

    ``x1``, ``x2`` are the inverse points and ``c`` the auxiliary
    coefficient of their quadratic.  ``r0_mapped``/``r1_mapped`` bound the
    concentric annulus.  Degenerate maps are the identity; their inverse
    points are stored as the d -> 0 limits (0, inf) and must not be used
    in arithmetic.
    """

    x1: float
    x2: float
    c: float
    r0_mapped: float
    r1_mapped: float
    degenerate: bool


def inverse_points(geom: EccentricGeometry) -> tuple[float, float, float]:
    """Inverse points of the two conductor circles.

    Returns ``(x1, x2, c)`` with ``0 < x1 < r1 < x2`` and
    ``x1 * x2 = r1**2``.  The smaller root is recovered from the product
    identity rather than the subtractive formula, which cancels badly for
    small offsets.

    Raises
    ------
    DegenerateGeometry
        If the offset is below the concentric threshold.
    """
    if geom.is_degenerate:
        raise DegenerateGeometry(
            f"offset {geom.offset} below concentric threshold "
            f"{DEGENERACY_RATIO * geom.r1_outer}; use the identity map"
        )
    r1, r0, d = geom.r1_outer, geom.r0_inner, geom.offset
    c = (r0 * r0 - r1 * r1 - d * d) / d
    disc = c * c - 4.0 * r1 * r1
    # disc > 0 is equivalent to offset + r0 < r1, already enforced
    x2 = 0.5 * (-c + math.sqrt(disc))
    x1 = (r1 * r1) / x2
    return x1, x2, c


def _mobius(z, x1: float, x2: float):
    """The normalized inverse-point map; its own inverse."""
    return x2 * (z - x1) / (z - x2)


def build_map(geom: EccentricGeometry) -> ConcentricMap:
    """Construct the concentric map for a geometry.

    The outer radius is preserved (``r1_mapped = r1``).  The mapped inner
    radius is the image of the inner circle's near endpoint ``d + r0`` on
    the symmetry axis; the far endpoint ``d - r0`` gives the same radius
    because both conductor circles are concentric images under the map.
    Concentric input yields the identity map.
    """
    if geom.is_degenerate:
        return ConcentricMap(
            x1=0.0,
            x2=math.inf,
            c=-math.inf,
            r0_mapped=geom.r0_inner,
            r1_mapped=geom.r1_outer,
            degenerate=True,
        )
    x1, x2, c = inverse_points(geom)
    r0_mapped = abs(_mobius(geom.offset + geom.r0_inner, x1, x2))
    return ConcentricMap(
        x1=x1,
        x2=x2,
        c=c,
        r0_mapped=r0_mapped,
        r1_mapped=geom.r1_outer,
        degenerate=False,
    )


def _check_annulus(cmap: ConcentricMap, rho) -> None:
    tol = 1e-9 * cmap.r1_mapped
    rho = np.asarray(rho)
    if np.any(rho < cmap.r0_mapped - tol) or np.any(rho > cmap.r1_mapped + tol):
        raise OutOfDomain(
            f"rho outside annulus [{cmap.r0_mapped}, {cmap.r1_mapped}]"
        )


def jacobian_inv(cmap: ConcentricMap, rho, phi):
    """Inverse Jacobian determinant of the transform at concentric (rho, phi).

    Evaluates ``(1 - x1/x2)**2 / (1 - 2*rho*cos(phi)/x2 + (rho/x2)**2)**2``,
    the area-scaling weight of the map back to physical coordinates.
    Equals 1 everywhere for a degenerate (identity) map.  Accepts scalars
    or arrays, broadcasting rho against phi.
    """
    _check_annulus(cmap, rho)
    rho = np.asarray(rho, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if cmap.degenerate:
        out = np.ones(np.broadcast(rho, phi).shape)
        return float(out) if out.ndim == 0 else out
    u = rho / cmap.x2
    num = (1.0 - cmap.x1 / cmap.x2) ** 2
    den = (1.0 - 2.0 * u * np.cos(phi) + u * u) ** 2
    out = num / den
    return float(out) if out.ndim == 0 else out


def map_to_eccentric(cmap: ConcentricMap, rho, phi):
    """Map concentric (rho, phi) back to physical (rho_tilde, phi_tilde).

    Applies the involution to ``w = rho * exp(i*phi)``.  Angles are
    returned in [0, 2*pi).  Degenerate maps return the coordinates
    unchanged.
    """
    _check_annulus(cmap, rho)
    rho = np.asarray(rho, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if cmap.degenerate:
        rho_t, phi_t = np.broadcast_arrays(rho, np.mod(phi, 2.0 * np.pi))
        if rho_t.ndim == 0:
            return float(rho_t), float(phi_t)
        return rho_t.copy(), phi_t.copy()
    w = rho * np.exp(1j * phi)
    z = _mobius(w, cmap.x1, cmap.x2)
    rho_t = np.abs(z)
    phi_t = np.mod(np.angle(z), 2.0 * np.pi)
    if rho_t.ndim == 0:
        return float(rho_t), float(phi_t)
    return rho_t, phi_t
