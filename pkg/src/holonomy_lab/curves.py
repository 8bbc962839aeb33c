"""Geodesics, null phase curves, and phase functionals of sampled paths.

A null phase curve is a ray-space path on which the three-point invariant
of any three samples is real and positive.  Geodesics have this property
in every dimension; from dimension 3 on there are others, generated here
from real profiles x(s) in an orthonormal frame.  Curves are represented
by uniform sampling, derivatives by finite differences, and integrals by
composite Simpson quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_GRID, DEFAULT_SUBGRID, TAU_DEG, TAU_NPC
from .core import as_state, inner, normalize, principal_angle, rays_equal


@dataclass(frozen=True)
class CurveLift(object):
    """Uniformly sampled unit-norm path in Hilbert space."""

    s: np.ndarray
    psi: np.ndarray  # shape (len(s), dim)

    def __post_init__(self) -> None:
        s = np.asarray(self.s, dtype=float).reshape(-1)
        psi = np.asarray(self.psi, dtype=complex)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "psi", psi)
        if s.size < 3:
            raise ValueError("a curve needs at least 3 samples")
        if psi.ndim != 2 or psi.shape[0] != s.size:
            raise ValueError("psi must have one row per sample")
        steps = np.diff(s)
        if np.any(steps <= 0) or np.max(np.abs(steps - steps[0])) > 1e-9 * abs(steps[0]):
            raise ValueError("sample grid must be uniform and increasing")
        norms = np.linalg.norm(psi, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-9:
            raise ValueError("all samples must be unit vectors")
        overlaps = np.abs(np.sum(np.conjugate(psi[:-1]) * psi[1:], axis=1))
        if np.min(overlaps) <= TAU_DEG:
            raise ValueError("consecutive samples are orthogonal; lift is degenerate")

    @property
    def dim(self) -> int:
        return self.psi.shape[1]


@dataclass(frozen=True)
class CurveFrame:
    """Orthonormal frame vectors plus the opening angle of the endpoints."""

    vectors: np.ndarray  # shape (m, dim)
    theta0: float

    def __post_init__(self) -> None:
        v = np.asarray(self.vectors, dtype=complex)
        object.__setattr__(self, "vectors", v)
        if v.ndim != 2 or v.shape[0] < 2:
            raise ValueError("frame needs at least two vectors")
        gram = np.conjugate(v) @ v.T
        if np.max(np.abs(gram - np.eye(v.shape[0]))) > 1e-12:
            raise ValueError("frame vectors must be orthonormal")
        if not 0.0 < self.theta0 < np.pi:
            raise ValueError("theta0 must lie strictly inside (0, pi)")


@dataclass(frozen=True)
class RealProfile:
    """Real n-component profile x(s) sampled on a uniform grid."""

    s: np.ndarray
    x: np.ndarray  # shape (len(s), m), real

    def __post_init__(self) -> None:
        s = np.asarray(self.s, dtype=float).reshape(-1)
        x = np.asarray(self.x, dtype=float)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "x", x)
        if x.ndim != 2 or x.shape[0] != s.size:
            raise ValueError("x must have one row per sample")


@dataclass
class ProfileReport:
    """Validation outcome for a real profile; empty violations means valid."""

    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass
class NpcReport:
    """Outcome of the null-phase scan over sample triples."""

    checked: int = 0
    violations: list = field(default_factory=list)
    min_real: float = np.inf
    max_rel_imag: float = 0.0
    fixed_point_ok: bool = True
    variants_agree: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations


def in_phase_gauge(psi1, psi2, tau_deg: float = TAU_DEG):
    """Rephase psi2 so the pair overlap is real positive."""
    v1 = normalize(psi1)
    v2 = normalize(psi2)
    ov = inner(v1, v2)
    if abs(ov) <= tau_deg:
        raise ValueError("orthogonal pair cannot be brought in phase")
    return v1, v2 * (abs(ov) / ov)


def pair_angle(psi1, psi2, tau_deg: float = TAU_DEG) -> float:
    """Opening angle theta0 = 2 arccos |(psi1, psi2)| of two unit rays."""
    c = abs(inner(normalize(psi1), normalize(psi2)))
    if c <= tau_deg or c >= 1.0 - tau_deg:
        raise ValueError("pair angle hits the boundary of (0, pi)")
    return 2.0 * float(np.arccos(c))


def _require_in_phase(v1, v2, tau_deg: float):
    ov = inner(v1, v2)
    if abs(ov) <= tau_deg:
        raise ValueError("orthogonal pair")
    if abs(np.angle(ov)) > 1e-10:
        raise ValueError("pair is not in phase; run in_phase_gauge first")
    return ov.real


def geodesic_lift(psi1, psi2, grid: int = DEFAULT_GRID,
                  tau_deg: float = TAU_DEG) -> CurveLift:
    """Horizontal geodesic between an in-phase pair, sampled on [0, 1]."""
    v1 = normalize(psi1)
    v2 = normalize(psi2)
    c0 = _require_in_phase(v1, v2, tau_deg)
    if c0 >= 1.0 - tau_deg:
        raise ValueError("coincident endpoints: opening angle is 0")
    theta0 = 2.0 * float(np.arccos(c0))
    e1 = v1
    e2 = (v2 - c0 * v1) / np.sqrt(1.0 - c0 * c0)
    t = np.linspace(0.0, 1.0, grid)
    half = 0.5 * theta0 * t
    psi = np.outer(np.cos(half), e1) + np.outer(np.sin(half), e2)
    psi[0] = v1
    psi[-1] = v2
    return CurveLift(t, psi)


def frame_from_pair(psi_a, psi_b, size: int = 3,
                    tau_deg: float = TAU_DEG) -> CurveFrame:
    """Orthonormal frame whose first two vectors span an in-phase pair.

    The remaining ``size - 2`` vectors are a deterministic orthonormal
    completion from the singular vectors of the span.
    """
    v1, v2 = in_phase_gauge(psi_a, psi_b, tau_deg)
    theta0 = pair_angle(v1, v2, tau_deg)
    c0 = np.cos(theta0 / 2)
    e2 = (v2 - c0 * v1) / np.sin(theta0 / 2)
    dim = v1.size
    if size < 2 or size > dim:
        raise ValueError(f"frame size must lie in [2, {dim}]")
    rows = [v1, e2]
    if size > 2:
        a = np.conjugate(np.array(rows))
        _, _, vh = np.linalg.svd(a, full_matrices=True)
        complement = np.conjugate(vh[2:])
        rows.extend(complement[: size - 2])
    return CurveFrame(np.array(rows), theta0)


def generate_npc_profile(theta0: float, n: int, eps: float,
                         grid: int = DEFAULT_GRID) -> RealProfile:
    """Nonnegative three-component profile family on s in [0, 1].

        x(s) = (cos a, sin a cos b, sin a sin b, 0, ...),
        a = s * theta0 / 2,  b = eps * sin(pi s).

    eps = 0 reduces to the geodesic profile.  Nongeodesic members need at
    least three frame directions, hence n >= 3.
    """
    if n < 3:
        raise ValueError("nongeodesic profiles need n >= 3")
    if not 0.0 < theta0 < np.pi:
        raise ValueError("theta0 must lie strictly inside (0, pi)")
    if not 0.0 <= eps < np.pi / 2:
        raise ValueError("eps must lie in [0, pi/2)")
    s = np.linspace(0.0, 1.0, grid)
    a = 0.5 * theta0 * s
    b = eps * np.sin(np.pi * s)
    x = np.zeros((grid, n))
    x[:, 0] = np.cos(a)
    x[:, 1] = np.sin(a) * np.cos(b)
    x[:, 2] = np.sin(a) * np.sin(b)
    return RealProfile(s, x)


def validate_profile(profile: RealProfile, theta0: float,
                     tol: float = 1e-9) -> ProfileReport:
    """Check boundary, local and nonlocal conditions of a profile.

    Boundary: x starts at (1, 0, ...) and ends at (cos(theta0/2),
    sin(theta0/2), 0, ...).  Local: unit norm, x_1 > 0 and
    C0 x_1 + S0 x_2 > 0 at every sample.  Nonlocal: every pairwise dot
    product must lie in (0, 1].
    """
    report = ProfileReport()
    x = profile.x
    n_samples, m = x.shape
    c0, s0 = np.cos(theta0 / 2), np.sin(theta0 / 2)
    start = np.zeros(m)
    start[0] = 1.0
    end = np.zeros(m)
    end[0], end[1] = c0, s0
    if np.max(np.abs(x[0] - start)) > tol:
        report.violations.append({"kind": "boundary", "index": 0,
                                  "detail": "profile must start at (1, 0, ...)"})
    if np.max(np.abs(x[-1] - end)) > tol:
        report.violations.append({"kind": "boundary", "index": n_samples - 1,
                                  "detail": "profile must end at (C0, S0, 0, ...)"})
    norms = np.linalg.norm(x, axis=1)
    for i in np.flatnonzero(np.abs(norms - 1.0) > tol):
        report.violations.append({"kind": "local", "index": int(i),
                                  "detail": f"norm {norms[i]:.12f} is not 1"})
    for i in np.flatnonzero(x[:, 0] <= 0.0):
        report.violations.append({"kind": "local", "index": int(i),
                                  "detail": "first component not positive"})
    combo = c0 * x[:, 0] + s0 * x[:, 1]
    for i in np.flatnonzero(combo <= 0.0):
        report.violations.append({"kind": "local", "index": int(i),
                                  "detail": "C0 x1 + S0 x2 not positive"})
    gram = x @ x.T
    bad = (gram <= 0.0) | (gram > 1.0 + tol)
    bad &= np.triu(np.ones_like(bad, dtype=bool), k=1)
    for i, j in zip(*np.nonzero(bad)):
        report.violations.append({"kind": "nonlocal", "pair": [int(i), int(j)],
                                  "detail": f"overlap {gram[i, j]:.6e} outside (0, 1]"})
    return report


def profile_to_lift(frame: CurveFrame, profile: RealProfile,
                    validate: bool = True) -> CurveLift:
    """Assemble the Hilbert-space lift psi(s) = sum_r x_r(s) e_r."""
    m = frame.vectors.shape[0]
    if profile.x.shape[1] != m:
        raise ValueError("profile width does not match the frame size")
    if validate:
        report = validate_profile(profile, frame.theta0)
        if not report.ok:
            first = report.violations[0]
            raise ValueError(f"invalid profile: {first['detail']} "
                             f"({len(report.violations)} violations)")
    return CurveLift(profile.s, profile.x.astype(complex) @ frame.vectors)


def _subgrid_indices(n_samples: int, subgrid: int) -> np.ndarray:
    if subgrid >= n_samples:
        return np.arange(n_samples)
    return np.unique(np.linspace(0, n_samples - 1, subgrid).round().astype(int))


def verify_npc(lift: CurveLift, subgrid: int = DEFAULT_SUBGRID,
               tau_npc: float = TAU_NPC) -> NpcReport:
    """Scan sample triples for the real-positive invariant condition.

    Every triple (i, j, k) drawn from a subgrid must give a three-point
    invariant with positive real part and relative imaginary part at most
    ``tau_npc``.  The variant with the first sample held fixed is scanned
    as well and the two verdicts are compared.
    """
    idx = _subgrid_indices(lift.s.size, subgrid)
    p = lift.psi[idx]
    gram = np.conjugate(p) @ p.T
    report = NpcReport()
    k = idx.size
    fixed_violation = False
    for a in range(k - 2):
        # delta[b, c] = G[a,b] G[b,c] G[c,a] over b < c, both beyond a
        block = gram[a, :, None] * gram * gram[:, a][None, :]
        rows, cols = np.triu_indices(k, k=1)
        keep = rows > a
        rows, cols = rows[keep], cols[keep]
        deltas = block[rows, cols]
        mags = np.abs(deltas)
        rel_imag = np.abs(deltas.imag) / np.where(mags > 0, mags, 1.0)
        bad = (deltas.real <= 0.0) | (rel_imag > tau_npc)
        report.checked += deltas.size
        report.min_real = min(report.min_real, float(deltas.real.min()))
        report.max_rel_imag = max(report.max_rel_imag, float(rel_imag.max()))
        for b, c, d in zip(rows[bad], cols[bad], deltas[bad]):
            report.violations.append({
                "indices": [int(idx[a]), int(idx[b]), int(idx[c])],
                "delta": [float(d.real), float(d.imag)],
            })
            if a == 0:
                fixed_violation = True
    report.fixed_point_ok = not fixed_violation
    report.variants_agree = report.fixed_point_ok == report.ok
    return report


def _derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order finite differences on a uniform grid (any shape, axis 0)."""
    n = values.shape[0]
    if n < 5:
        raise ValueError("need at least 5 samples for the derivative stencil")
    d = np.empty_like(values)
    d[2:-2] = (values[:-4] - 8 * values[1:-3] + 8 * values[3:-1] - values[4:]) / (12 * h)
    d[0] = (-25 * values[0] + 48 * values[1] - 36 * values[2]
            + 16 * values[3] - 3 * values[4]) / (12 * h)
    d[1] = (-3 * values[0] - 10 * values[1] + 18 * values[2]
            - 6 * values[3] + values[4]) / (12 * h)
    d[-2] = (3 * values[-1] + 10 * values[-2] - 18 * values[-3]
             + 6 * values[-4] - values[-5]) / (12 * h)
    d[-1] = (25 * values[-1] - 48 * values[-2] + 36 * values[-3]
             - 16 * values[-4] + 3 * values[-5]) / (12 * h)
    return d


def _simpson(values: np.ndarray, h: float) -> float:
    n = values.size
    if n < 3 or n % 2 == 0:
        raise ValueError("composite Simpson needs an odd number of samples")
    weights = np.ones(n)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    return float(np.dot(weights, values) * h / 3.0)


def _raw_connection_integral(psi: np.ndarray, h: float) -> float:
    dpsi = _derivative(psi, h)
    integrand = np.imag(np.sum(np.conjugate(psi) * dpsi, axis=1))
    return _simpson(integrand, h)


def connection_integral(lift: CurveLift, max_quad_error: float = 1e-6) -> float:
    """Quadrature of -i (psi, dpsi/ds) along the lift.

    Vanishes for lifts with real pairwise overlaps; for a general lift of
    a null phase curve it equals the argument of the endpoint overlap.
    Raises when the internal error estimate exceeds ``max_quad_error``.
    """
    n = lift.s.size
    if n < 5 or n % 2 == 0:
        raise ValueError("connection integral needs an odd grid of at least 5 samples")
    h = float(lift.s[1] - lift.s[0])
    result = _raw_connection_integral(lift.psi, h)
    if (n - 1) % 4 == 0:
        coarse = _raw_connection_integral(lift.psi[::2], 2.0 * h)
        estimate = abs(result - coarse) / 15.0
    else:
        dpsi = _derivative(lift.psi, h)
        integrand = np.imag(np.sum(np.conjugate(lift.psi) * dpsi, axis=1))
        trapezoid = float(np.trapezoid(integrand, dx=h))
        estimate = abs(result - trapezoid)
    if estimate > max_quad_error:
        raise ValueError(
            f"grid too coarse: estimated quadrature error {estimate:.3e}"
        )
    return result


def open_curve_phase(lift: CurveLift) -> float:
    """Geometric phase of an open curve: endpoint phase minus the integral."""
    endpoint = float(np.angle(inner(lift.psi[0], lift.psi[-1])))
    return principal_angle(endpoint - connection_integral(lift))


def loop_geometric_phase(segments, subgrid: int = DEFAULT_SUBGRID,
                         tau_npc: float = TAU_NPC,
                         junction_tol: float = 1e-9,
                         check_npc: bool = True) -> float:
    """Geometric phase of a closed loop built from three null phase curves.

    Segment ends must match the next segment's start ray.  Junction phase
    jumps are collected as arguments of the cross-segment overlaps, which
    makes the total independent of each segment's lift gauge:

        phase = sum_a arg (start_{a+1}, end_a) - sum_a integral_a.

    For vertices psi_1, psi_2, psi_3 this reproduces the triad phase
    -arg of the three-point invariant, whichever null phase curves join
    them.
    """
    if len(segments) != 3:
        raise ValueError("a triangle loop needs exactly three segments")
    for a, seg in enumerate(segments):
        nxt = segments[(a + 1) % 3]
        if not rays_equal(seg.psi[-1], nxt.psi[0], tol=junction_tol):
            raise ValueError(f"segment {a} does not end on the ray "
                             f"where segment {(a + 1) % 3} starts")
    if check_npc:
        for a, seg in enumerate(segments):
            if not verify_npc(seg, subgrid=subgrid, tau_npc=tau_npc).ok:
                raise ValueError(f"segment {a} is not a null phase curve")
    total = 0.0
    for a, seg in enumerate(segments):
        nxt = segments[(a + 1) % 3]
        total += float(np.angle(inner(nxt.psi[0], seg.psi[-1])))
        total -= connection_integral(seg)
    return principal_angle(total)
