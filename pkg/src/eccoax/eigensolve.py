"""Eigenpair extraction and physical mode labeling.

The generalized problem A v = lambda B v is reduced to the standard
problem inv(B) A v = lambda v (B is diagonal positive).  Small problems go
through a dense general eigensolver; larger ones use shift-invert Arnoldi
with a small positive shift, which is safe because the spectrum is real
and non-positive.  Eigenvalues depend only on the geometry and grid;
media never enter this module.

Labels (family, m, n, parity) are read off the eigenvectors: the dominant
azimuthal harmonic at the radius of largest amplitude gives m, the
cosine/sine balance gives the parity, and n counts repeats of (m, parity)
in eigenvalue order.  Degenerate pairs are re-mixed into cosine-like and
sine-like combinations first, since solvers return arbitrary rotations
inside a degenerate subspace.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.linalg import eig as dense_eig
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, eigs

from .assembly import DiscreteOperator
from .errors import AmbiguousLabel, ConvergenceFailure, InsufficientSpectrum
from .grid import PolarGrid
from .media import ModeFamily

#: Problems at or below this size use the dense solver.
DENSE_CUTOFF = 500

#: Relative gap under which two eigenvalues form a degenerate cluster.
DEGENERACY_RTOL = 1e-8

#: Residual bound: ||A v - lambda B v||_2 <= RESIDUAL_RTOL * ||A||_inf * ||v||_2.
RESIDUAL_RTOL = 1e-8

#: Fraction of the top two harmonic magnitudes below which a label is flagged.
AMBIGUITY_MARGIN = 0.05


@dataclass
class EigenPair:
    """One eigenpair: eigenvalue (1/m**2), max-normalized eigenvector with
    positive leading entry, and the relative 2-norm residual."""

    lam: float
    vector: np.ndarray
    residual: float


@dataclass(frozen=True)
class ModeLabel:
    """Physical mode identity.  ``ambiguous`` marks labels whose two
    leading harmonics were within the ambiguity margin."""

    family: ModeFamily
    m: int
    n: int
    parity: str
    ambiguous: bool = False

    @property
    def key(self) -> tuple:
        return (self.family.value, self.m, self.n, self.parity)

    def short(self, with_parity: bool = True) -> str:
        base = f"{self.family.value}{self.m}{self.n}"
        return f"{base}_{self.parity}" if with_parity else base


@dataclass
class EigenSolution:
    """Result of one eigensolve: the requested pairs sorted by |lambda|,
    the near-zero constant pair for TE (None for TM), and the zero
    threshold used to classify it."""

    pairs: list[EigenPair]
    trivial: EigenPair | None
    tol_zero: float
    family: ModeFamily


def _normalize(vec: np.ndarray) -> np.ndarray:
    """Scale so the entry of largest magnitude equals +1."""
    j = int(np.argmax(np.abs(vec)))
    return vec / vec[j]


def _realize(w: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Check the spectrum is real and strip imaginary parts.

    The continuous operator has a real spectrum, so any significant
    imaginary component signals an assembly or solver defect.
    """
    bad = np.abs(w.imag) > RESIDUAL_RTOL * np.abs(w)
    if np.any(bad):
        worst = w[bad][np.argmax(np.abs(w[bad].imag))]
        raise ConvergenceFailure(f"complex eigenvalue from real-spectrum operator: {worst}")
    if np.iscomplexobj(V):
        # align any stray phase before discarding imaginary parts
        Vr = np.empty(V.shape)
        for k in range(V.shape[1]):
            v = V[:, k]
            j = int(np.argmax(np.abs(v)))
            v = v * np.conj(v[j]) / abs(v[j])
            if np.max(np.abs(v.imag)) > 1e-8 * np.max(np.abs(v.real)):
                raise ConvergenceFailure("eigenvector has a non-trivial imaginary part")
            Vr[:, k] = v.real
        V = Vr
    return w.real, V


def _residual(op: DiscreteOperator, lam: float, vec: np.ndarray) -> float:
    r = op.A @ vec - lam * (op.B * vec)
    return float(np.linalg.norm(r) / np.linalg.norm(vec))


def solve_eigs(
    op: DiscreteOperator, count: int, dense_cutoff: int = DENSE_CUTOFF
) -> EigenSolution:
    """Smallest-|lambda| eigenpairs of A v = lambda B v.

    Returns ``count`` pairs sorted ascending by |lambda|.  For TE the
    near-zero constant mode is detected, reported separately and excluded
    from the count.  Every returned pair satisfies the residual bound; a
    violation, a complex eigenvalue, or a misplaced zero mode raises
    ConvergenceFailure.
    """
    if count < 1:
        raise InsufficientSpectrum("count must be >= 1")
    family = op.indexing.family
    need = count + (1 if family is ModeFamily.TE else 0)
    n = op.n
    if need > n:
        raise InsufficientSpectrum(f"requested {need} eigenpairs from size-{n} operator")

    C = sparse.diags(1.0 / op.B) @ op.A
    k_request = min(need + 3, n)
    if n <= dense_cutoff or k_request >= n - 1:
        w, V = dense_eig(C.toarray())
    else:
        # shift slightly into the positive half line: the spectrum is
        # non-positive, so A - sigma*B is never singular there
        sigma = 0.01 * (np.pi / (op.grid.r1 - op.grid.r0)) ** 2
        v0 = np.random.RandomState(20240901).standard_normal(n)
        try:
            w, V = eigs(C.tocsc(), k=k_request, sigma=sigma, which="LM", v0=v0)
        except ArpackNoConvergence as exc:
            raise ConvergenceFailure(f"shift-invert Arnoldi did not converge: {exc}") from exc
        except ArpackError as exc:
            raise ConvergenceFailure(f"ARPACK failure: {exc}") from exc

    w, V = _realize(w, V)
    order = np.argsort(np.abs(w), kind="stable")
    w = w[order]
    V = V[:, order]

    def make_pair(idx: int) -> EigenPair:
        vec = _normalize(V[:, idx])
        lam = float(w[idx])
        res = _residual(op, lam, vec)
        if res > RESIDUAL_RTOL * op.a_norm_inf:
            raise ConvergenceFailure(
                f"residual {res:.3e} exceeds {RESIDUAL_RTOL * op.a_norm_inf:.3e} "
                f"for eigenvalue {lam}"
            )
        return EigenPair(lam=lam, vector=vec, residual=res)

    if family is ModeFamily.TE:
        trivial = make_pair(0)
        pairs = [make_pair(i) for i in range(1, 1 + count)]
        returned = [trivial.lam] + [p.lam for p in pairs]
        tol_zero = 1e-6 * max(abs(v) for v in returned)
        if abs(trivial.lam) > tol_zero:
            raise ConvergenceFailure(
                f"TE constant mode not found: smallest |lambda| = {abs(trivial.lam):.3e} "
                f"exceeds tol_zero = {tol_zero:.3e}"
            )
        if abs(pairs[0].lam) <= tol_zero:
            raise ConvergenceFailure("more than one TE eigenvalue below tol_zero")
        return EigenSolution(pairs=pairs, trivial=trivial, tol_zero=tol_zero, family=family)

    pairs = [make_pair(i) for i in range(count)]
    tol_zero = 1e-6 * max(abs(p.lam) for p in pairs)
    if abs(pairs[0].lam) <= tol_zero:
        raise ConvergenceFailure("TM spectrum contains an unexpected near-zero eigenvalue")
    return EigenSolution(pairs=pairs, trivial=None, tol_zero=tol_zero, family=family)


def _harmonic_magnitudes(row: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Cosine/sine coefficients and magnitudes of a periodic sample row."""
    nphi = row.size
    X = np.fft.rfft(row)
    a = np.empty(X.size)
    b = np.empty(X.size)
    a[0] = X[0].real / nphi
    b[0] = 0.0
    a[1:] = 2.0 * X[1:].real / nphi
    b[1:] = -2.0 * X[1:].imag / nphi
    if nphi % 2 == 0:
        a[-1] = X[-1].real / nphi
        b[-1] = 0.0
    return a, b, np.hypot(a, b)


def _cluster(pairs: list[EigenPair]) -> list[list[int]]:
    """Group indices of (sorted) pairs whose eigenvalues nearly coincide."""
    groups: list[list[int]] = []
    for idx, p in enumerate(pairs):
        if groups and abs(p.lam - pairs[groups[-1][0]].lam) < DEGENERACY_RTOL * abs(
            pairs[groups[-1][0]].lam
        ):
            groups[-1].append(idx)
        else:
            groups.append([idx])
    return groups


def _sample_row(vec2d: np.ndarray) -> np.ndarray:
    i_star = int(np.argmax(np.max(np.abs(vec2d), axis=1)))
    return vec2d[i_star]


def _remix_degenerate_pair(
    pa: EigenPair, pb: EigenPair, nphi: int, op: DiscreteOperator | None
) -> None:
    """Rotate a degenerate pair onto cosine-like / sine-like combinations.

    Works in place.  When the 2x2 harmonic-coefficient system is close to
    singular the pair is left untouched (the two vectors share a parity,
    so they are not a split symmetric pair)."""
    va = pa.vector.reshape(-1, nphi)
    vb = pb.vector.reshape(-1, nphi)
    rowa = _sample_row(va)
    rowb = _sample_row(vb)
    _, _, mags = _harmonic_magnitudes(rowa + rowb)
    m = int(np.argmax(mags))
    if m == 0 or (nphi % 2 == 0 and m == nphi // 2):
        return  # single-parity harmonic, nothing to separate
    aa, ba, _ = _harmonic_magnitudes(rowa)
    ab, bb, _ = _harmonic_magnitudes(rowb)
    det = aa[m] * bb[m] - ab[m] * ba[m]
    scale = np.hypot(aa[m], ba[m]) * np.hypot(ab[m], bb[m])
    if abs(det) < 1e-8 * scale:
        return
    even = _normalize(bb[m] * pa.vector - ba[m] * pb.vector)
    odd = _normalize(ab[m] * pa.vector - aa[m] * pb.vector)
    pa.vector = even
    pb.vector = odd
    if op is not None:
        pa.residual = _residual(op, pa.lam, pa.vector)
        pb.residual = _residual(op, pb.lam, pb.vector)
    else:
        # combinations of same-cluster eigenvectors: residual grows at most
        # by the eigenvalue gap times the largest Jacobian weight
        bump = abs(pa.lam - pb.lam)
        pa.residual = pb.residual = max(pa.residual, pb.residual) + bump


def label_modes(
    pairs: list[EigenPair],
    grid: PolarGrid,
    family: ModeFamily,
    op: DiscreteOperator | None = None,
) -> list[tuple[EigenPair, ModeLabel]]:
    """Assign (family, m, n, parity) labels to eigenpairs sorted by |lambda|.

    Pass the operator to get exact residuals after degenerate pairs are
    re-mixed; otherwise a conservative bound is stored.  Ambiguous labels
    (two leading harmonics within 5 percent) are flagged and warned about,
    but still assigned.
    """
    nphi = grid.N - 1
    for group in _cluster(pairs):
        if len(group) == 2:
            _remix_degenerate_pair(pairs[group[0]], pairs[group[1]], nphi, op)

    labeled: list[tuple[EigenPair, ModeLabel]] = []
    seen: dict[tuple[int, str], int] = {}
    for pair in pairs:
        row = _sample_row(pair.vector.reshape(-1, nphi))
        a, b, mags = _harmonic_magnitudes(row)
        m = int(np.argmax(mags))
        parity = "even" if abs(a[m]) >= abs(b[m]) else "odd"
        ranked = np.sort(mags)[::-1]
        ambiguous = bool(ranked.size > 1 and (ranked[0] - ranked[1]) < AMBIGUITY_MARGIN * ranked[0])
        n = seen.get((m, parity), 0) + 1
        seen[(m, parity)] = n
        label = ModeLabel(family=family, m=m, n=n, parity=parity, ambiguous=ambiguous)
        if ambiguous:
            warnings.warn(
                f"mode label {label.short()} ambiguous: leading harmonic magnitudes "
                f"{ranked[0]:.3e} and {ranked[1]:.3e}",
                AmbiguousLabel,
                stacklevel=2,
            )
        labeled.append((pair, label))
    return labeled
