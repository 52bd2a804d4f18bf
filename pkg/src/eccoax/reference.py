"""Analytic cutoffs for the concentric annulus from Bessel cross products.

The TM cutoff wavenumbers of a concentric coaxial guide are the zeros of

    J_m(k r0) Y_m(k r1) - J_m(k r1) Y_m(k r0),

and the TE cutoffs use the derivative cross product.  Roots are bracketed
by a sign-change scan and polished by bisection.  This module is the
independent check for the finite-difference pipeline in the concentric
limit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import jv, jvp, yv, yvp

from .errors import BracketingFailure, InvalidAnnulus
from .media import ModeFamily


@dataclass(frozen=True)
class CrossProductRoot:
    family: ModeFamily
    m: int
    n: int
    k: float


def cross_product(family: ModeFamily, m: int, k, r0: float, r1: float):
    """Bessel cross product whose zeros are the cutoffs; derivative form
    for TE.  Vectorized in k."""
    if family is ModeFamily.TM:
        return jv(m, k * r0) * yv(m, k * r1) - jv(m, k * r1) * yv(m, k * r0)
    return jvp(m, k * r0) * yvp(m, k * r1) - jvp(m, k * r1) * yvp(m, k * r0)


def _bisect(f, a: float, b: float) -> float:
    """Bisect to the floating-point floor (well past 1e-12 relative); the
    cross product's local scale can be small, so a loose root leaves a
    visible residual."""
    fa = f(a)
    while (b - a) > 5e-16 * b:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        fm = f(mid)
        if fa * fm <= 0:
            b = mid
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


def concentric_cutoffs(
    r0: float,
    r1: float,
    family: ModeFamily,
    m: int,
    count: int,
    _scan_span: float | None = None,
) -> list[CrossProductRoot]:
    """First ``count`` positive cutoff wavenumbers for azimuthal order m.

    Scans with step pi/(8*(r1 - r0)), which cannot straddle two roots of
    the cross product, then bisects each bracket to 1e-12 relative.  If
    the initial scan window holds fewer than ``count`` sign changes it is
    enlarged once; a second shortfall raises BracketingFailure.
    """
    if not (0 < r0 < r1):
        raise InvalidAnnulus(f"need 0 < r0 < r1, got r0={r0}, r1={r1}")
    if count < 1:
        return []
    step = np.pi / (8.0 * (r1 - r0))
    span = _scan_span
    if span is None:
        # asymptotic spacing is pi/(r1 - r0); generous headroom for the
        # low-order shift with m
        span = (count + m + 3) * np.pi / (r1 - r0) * 2.0

    f = lambda k: cross_product(family, m, k, r0, r1)
    roots: list[float] = []
    for attempt in range(2):
        ks = step * np.arange(1, int(np.ceil(span / step)) + 1)
        vals = f(ks)
        roots = []
        for i in range(len(ks) - 1):
            if vals[i] == 0.0:
                roots.append(ks[i])
            elif vals[i] * vals[i + 1] < 0:
                roots.append(_bisect(f, ks[i], ks[i + 1]))
            if len(roots) == count:
                break
        if len(roots) == count:
            break
        span *= 4.0
    if len(roots) < count:
        raise BracketingFailure(
            f"found {len(roots)} of {count} roots for {family.value} m={m} "
            f"scanning k up to {span:.3e}"
        )
    return [
        CrossProductRoot(family=family, m=m, n=i + 1, k=k) for i, k in enumerate(roots)
    ]
