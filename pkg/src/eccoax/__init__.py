"""Eigenmode solver for eccentric coaxial waveguides.

The eccentric cross section is mapped conformally onto a concentric
annulus, where the axial-field Helmholtz equation becomes a weighted
eigenproblem whose spectrum depends only on the geometry.  Finite
differences on a polar grid produce A v = lambda B v; radial and axial
wavenumbers for any uniaxial (possibly lossy) medium and frequency then
follow from the stored eigenvalues without re-solving.
"""

from .assembly import DiscreteOperator, apply_operator, assemble, stencil_coefficients
from .constants import C0, EPS0, MU0
from .eigensolve import (
    EigenPair,
    EigenSolution,
    ModeLabel,
    label_modes,
    solve_eigs,
)
from .errors import (
    AmbiguousLabel,
    BracketingFailure,
    ConfigError,
    ConvergenceFailure,
    DegenerateGeometry,
    DimensionMismatch,
    EccoaxError,
    IndexOutOfRange,
    InsufficientSpectrum,
    InvalidAnnulus,
    InvalidGeometry,
    InvalidResolution,
    MismatchedDomain,
    NonPositiveFrequency,
    OutOfDomain,
)
from .geometry import (
    ConcentricMap,
    EccentricGeometry,
    build_map,
    inverse_points,
    jacobian_inv,
    map_to_eccentric,
)
from .grid import (
    PolarGrid,
    UnknownIndexing,
    build_grid,
    phi_neighbor,
    unknown_index,
    unknown_location,
)
from .media import (
    ModeFamily,
    UniaxialMedium,
    VACUUM,
    anisotropy_ratio,
    complex_relative_permittivity,
    transformed_axial_parameter,
    transverse_wavenumber_squared,
)
from .modes import (
    FieldSamples,
    ModeSolution,
    axial_wavenumber,
    field_samples,
    mode_solution,
    radial_wavenumber,
)
from .reference import CrossProductRoot, concentric_cutoffs, cross_product
from .sweeps import (
    SweepResult,
    SweepRow,
    sweep_anisotropy,
    sweep_eccentricity,
    sweep_frequency,
)

__version__ = "0.1.0"
