"""Intrinsic angles of a state triad and canonical reconstructions.

The three pairwise overlaps of a triad carry six angle parameters,

    (psi_j, psi_k) = exp(i phi_jk) cos(theta_jk / 2),

taken over the index pairs (1,2), (2,3), (3,1), with theta_jk strictly
inside (0, pi) and phi_jk in [0, 2*pi).  Only five of the six are
independent: the pair (theta_23, phi_g) is a function of the rest.  This
module extracts the angles, rebuilds canonical triads in dimensions 2 and
3 from an independent parameter set, solves for the dependent pair, and
evaluates the closed-form phase expressions that generalize Pancharatnam's
result.  A small analytic model of harmonic-oscillator coherent states is
included because its triads realize the same structure with five
invariant angles.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .config import TAU_DEG
from .core import (
    DegenerateTriadError,
    as_state,
    inner,
    normalize,
    principal_angle,
    wrap_angle_positive,
)


@dataclass(frozen=True)
class IntrinsicAngles:
    """The six unitary-invariant angles of a nondegenerate triad."""

    theta_12: float
    theta_23: float
    theta_31: float
    phi_12: float
    phi_23: float
    phi_31: float

    @property
    def phi_g(self) -> float:
        """Geometric phase implied by the phases: -(sum of phi_jk), in (-pi, pi]."""
        return principal_angle(-(self.phi_12 + self.phi_23 + self.phi_31))


@dataclass(frozen=True)
class CanonicalParamsN2:
    """Five independent angles of a dimension-2 triad."""

    theta_12: float
    theta_31: float
    phi_12: float
    phi_31: float
    phi: float

    def __post_init__(self) -> None:
        _check_open_interval("theta_12", self.theta_12, 0.0, np.pi)
        _check_open_interval("theta_31", self.theta_31, 0.0, np.pi)


@dataclass(frozen=True)
class CanonicalParamsN3(CanonicalParamsN2):
    """Six independent angles of a dimension-3 triad (adds xi)."""

    xi: float = np.pi / 4

    def __post_init__(self) -> None:
        super().__post_init__()
        if not 0.0 <= self.xi <= np.pi / 2:
            raise ValueError("xi must lie in [0, pi/2]")
        if self.xi == 0.0 or self.xi == np.pi / 2:
            warnings.warn(
                "xi at the boundary reduces the triad to a dimension-2 configuration",
                stacklevel=3,
            )


@dataclass(frozen=True)
class CoherentTriadParams:
    """Angles of a coherent-state triad with labels (0, r, r' e^{i phi'})."""

    theta_12: float
    theta_31: float
    phi_prime: float

    def __post_init__(self) -> None:
        _check_open_interval("theta_12", self.theta_12, 0.0, np.pi)
        _check_open_interval("theta_31", self.theta_31, 0.0, np.pi)

    @property
    def r(self) -> float:
        return float(np.sqrt(-2.0 * np.log(np.cos(self.theta_12 / 2.0))))

    @property
    def r_prime(self) -> float:
        return float(np.sqrt(-2.0 * np.log(np.cos(self.theta_31 / 2.0))))


def _check_open_interval(name: str, value: float, lo: float, hi: float) -> None:
    if not lo < value < hi:
        raise ValueError(f"{name} must lie strictly inside ({lo}, {hi})")


def _overlap_angles(a, b, tau_deg: float) -> tuple[float, float]:
    """(theta, phi) of a single overlap of unit vectors."""
    ov = inner(a, b)
    c = abs(ov)
    if c <= tau_deg:
        raise DegenerateTriadError("orthogonal pair: theta at the upper boundary")
    if c >= 1.0 - tau_deg:
        raise DegenerateTriadError("coincident rays: theta at the lower boundary")
    return 2.0 * float(np.arccos(c)), wrap_angle_positive(float(np.angle(ov)))


def extract_angles(psi1, psi2, psi3, tau_deg: float = TAU_DEG) -> IntrinsicAngles:
    """Extract the six intrinsic angles of a triad.

    Parameters
    ----------
    psi1, psi2, psi3 : array_like
        States of equal dimension; they are normalized internally.
    tau_deg : float
        Overlaps with modulus within ``tau_deg`` of 0 or 1 are rejected.

    Returns
    -------
    IntrinsicAngles
        theta_jk in (0, pi) and phi_jk in [0, 2*pi) for the pairs
        (1,2), (2,3), (3,1).
    """
    v1 = normalize(psi1)
    v2 = normalize(psi2)
    v3 = normalize(psi3)
    t12, p12 = _overlap_angles(v1, v2, tau_deg)
    t23, p23 = _overlap_angles(v2, v3, tau_deg)
    t31, p31 = _overlap_angles(v3, v1, tau_deg)
    return IntrinsicAngles(t12, t23, t31, p12, p23, p31)


def _solve_dependent(theta_12: float, theta_31: float, w: complex,
                     tau_deg: float) -> tuple[float, float]:
    """Shared tail of the dependent-angle solvers.

    ``w`` is the complex combination whose modulus is cos(theta_23 / 2) and
    whose argument is -phi_g.
    """
    c23 = abs(w)
    if c23 <= tau_deg:
        raise DegenerateTriadError("derived overlap is degenerate (theta_23 -> pi)")
    if c23 >= 1.0 + 64.0 * np.finfo(float).eps:
        raise ValueError(f"internal inconsistency: derived modulus {c23} exceeds 1")
    if c23 >= 1.0 - tau_deg:
        raise DegenerateTriadError("derived rays coincide (theta_23 -> 0)")
    theta_23 = 2.0 * float(np.arccos(c23))
    phi_g = principal_angle(-float(np.angle(w)))
    return theta_23, phi_g


def solve_dependent_n2(theta_12: float, theta_31: float, phi: float,
                       tau_deg: float = TAU_DEG) -> tuple[float, float]:
    """Dependent pair (theta_23, phi_g) of a dimension-2 triad.

    With C = cos(theta/2) and S = sin(theta/2) per index pair, the triad
    constraint pins the remaining overlap:

        cos(theta_23 / 2) * exp(-i phi_g) = C12*C31 + exp(i phi) * S12*S31.

    Raises when the derived overlap hits either boundary of (0, 1).
    """
    _check_open_interval("theta_12", theta_12, 0.0, np.pi)
    _check_open_interval("theta_31", theta_31, 0.0, np.pi)
    w = (np.cos(theta_12 / 2) * np.cos(theta_31 / 2)
         + np.exp(1j * phi) * np.sin(theta_12 / 2) * np.sin(theta_31 / 2))
    return _solve_dependent(theta_12, theta_31, complex(w), tau_deg)


def solve_dependent_n3(theta_12: float, theta_31: float, phi: float, xi: float,
                       tau_deg: float = TAU_DEG) -> tuple[float, float]:
    """Dependent pair for a dimension-3 triad; xi = 0 recovers the n=2 case."""
    _check_open_interval("theta_12", theta_12, 0.0, np.pi)
    _check_open_interval("theta_31", theta_31, 0.0, np.pi)
    if not 0.0 <= xi <= np.pi / 2:
        raise ValueError("xi must lie in [0, pi/2]")
    w = (np.cos(theta_12 / 2) * np.cos(theta_31 / 2)
         + np.exp(1j * phi) * np.sin(theta_12 / 2) * np.sin(theta_31 / 2) * np.cos(xi))
    return _solve_dependent(theta_12, theta_31, complex(w), tau_deg)


def build_canonical_n2(params: CanonicalParamsN2) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Canonical dimension-2 triad realizing the five given angles.

    The residual U(2) freedom is spent exactly as in the canonical form:

        psi1 = (1, 0)
        psi2 = e^{i phi_12} (C12, S12)
        psi3 = e^{-i phi_31} (C31, e^{i phi} S31)

    The derived pair is checked to stay interior before returning.
    """
    # raises on boundary hits of the derived pair
    solve_dependent_n2(params.theta_12, params.theta_31, params.phi)
    c12, s12 = np.cos(params.theta_12 / 2), np.sin(params.theta_12 / 2)
    c31, s31 = np.cos(params.theta_31 / 2), np.sin(params.theta_31 / 2)
    psi1 = np.array([1.0, 0.0], dtype=complex)
    psi2 = np.exp(1j * params.phi_12) * np.array([c12, s12], dtype=complex)
    psi3 = np.exp(-1j * params.phi_31) * np.array(
        [c31, np.exp(1j * params.phi) * s31], dtype=complex)
    return psi1, psi2, psi3


def build_canonical_n3(params: CanonicalParamsN3) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Canonical dimension-3 triad for six independent angles.

    psi3 picks up the third direction through xi:

        psi3 = e^{-i phi_31} (C31, e^{i phi} S31 cos(xi), S31 sin(xi))
    """
    solve_dependent_n3(params.theta_12, params.theta_31, params.phi, params.xi)
    c12, s12 = np.cos(params.theta_12 / 2), np.sin(params.theta_12 / 2)
    c31, s31 = np.cos(params.theta_31 / 2), np.sin(params.theta_31 / 2)
    psi1 = np.array([1.0, 0.0, 0.0], dtype=complex)
    psi2 = np.exp(1j * params.phi_12) * np.array([c12, s12, 0.0], dtype=complex)
    psi3 = np.exp(-1j * params.phi_31) * np.array(
        [c31,
         np.exp(1j * params.phi) * s31 * np.cos(params.xi),
         s31 * np.sin(params.xi)],
        dtype=complex)
    return psi1, psi2, psi3


def psi3_in_span(angles: IntrinsicAngles, tol: float = 1e-8) -> tuple[complex, complex]:
    """Coefficients (a, b) with psi3 = a psi1 + b psi2 for a dimension-2 triad.

    Solving the 2x2 Gram system gives, with phi_g the geometric phase,

        a = e^{-i phi_31} (C31 - e^{-i phi_g} C12 C23) / S12^2
        b = e^{+i phi_23} (C23 - e^{+i phi_g} C31 C12) / S12^2

    The angle set must satisfy the dimension-2 consistency relation; sets
    violating it beyond ``tol`` are rejected.
    """
    c12 = np.cos(angles.theta_12 / 2)
    s12 = np.sin(angles.theta_12 / 2)
    c23 = np.cos(angles.theta_23 / 2)
    c31 = np.cos(angles.theta_31 / 2)
    s31 = np.sin(angles.theta_31 / 2)
    phi_g = angles.phi_g
    # in dimension 2 the derived overlap must sit at distance S12*S31 from
    # C12*C31 in the complex plane
    residual = abs(abs(c23 * np.exp(-1j * phi_g) - c12 * c31) - s12 * s31)
    if residual > tol:
        raise ValueError(
            f"angle set is not realizable in dimension 2 (residual {residual:.3e})"
        )
    a = np.exp(-1j * angles.phi_31) * (c31 - c12 * c23 * np.exp(-1j * phi_g)) / s12**2
    b = np.exp(1j * angles.phi_23) * (c23 - c12 * c31 * np.exp(1j * phi_g)) / s12**2
    return complex(a), complex(b)


def pancharatnam_phase(theta_12: float, theta_31: float, phi: float,
                       xi: float | None = None, tau_deg: float = TAU_DEG) -> float:
    """Closed-form geometric phase of a canonical triad.

    Without ``xi`` this is the dimension-2 expression

        -arg(1 + e^{i phi} tan(theta_12/2) tan(theta_31/2)),

    and with ``xi`` the tangent product picks up a factor cos(xi).  The
    argument of the complex quantity must stay away from zero.
    """
    _check_open_interval("theta_12", theta_12, 0.0, np.pi)
    _check_open_interval("theta_31", theta_31, 0.0, np.pi)
    factor = np.tan(theta_12 / 2) * np.tan(theta_31 / 2)
    if xi is not None:
        if not 0.0 <= xi <= np.pi / 2:
            raise ValueError("xi must lie in [0, pi/2]")
        factor *= np.cos(xi)
    w = 1.0 + np.exp(1j * phi) * factor
    if abs(w) <= tau_deg:
        raise DegenerateTriadError("phase singularity: expression vanishes")
    return principal_angle(-float(np.angle(w)))


# ---------------------------------------------------------------------------
# coherent states, handled analytically


def coherent_overlap(z_prime: complex, z: complex) -> complex:
    """Overlap of two oscillator coherent states with labels z' and z."""
    z_prime = complex(z_prime)
    z = complex(z)
    return complex(
        np.exp(-0.5 * abs(z_prime - z) ** 2 + 1j * (np.conjugate(z_prime) * z).imag)
    )


def g4_action(alpha0: float, z0: complex, theta0: float,
              alpha: float, z: complex) -> tuple[float, complex]:
    """Action of the phase-space group element (alpha0, z0, theta0).

    Returns the transformed label pair (alpha'', z'') with

        alpha'' = alpha + alpha0 + Im(z0 * conj(z) * e^{i theta0})  (mod 2*pi)
        z''     = z * e^{-i theta0} + z0
    """
    z = complex(z)
    z0 = complex(z0)
    alpha2 = wrap_angle_positive(
        alpha + alpha0 + float((z0 * np.conjugate(z) * np.exp(1j * theta0)).imag)
    )
    return alpha2, z * np.exp(-1j * theta0) + z0


def solve_dependent_coherent(theta_12: float, theta_31: float, phi_prime: float,
                             tau_deg: float = TAU_DEG) -> tuple[float, float]:
    """Dependent pair (theta_23, phi_g) for the coherent triad (0, r, r' e^{i phi'}).

    The radial labels follow from the first two angles through
    e^{-r^2/2} = cos(theta_12/2), and the remaining overlap obeys

        cos(theta_23/2) = cos(theta_12/2) cos(theta_31/2) e^{r r' cos(phi')}
        phi_g = -r r' sin(phi')   (mod 2*pi, reported in (-pi, pi]).
    """
    params = CoherentTriadParams(theta_12, theta_31, phi_prime)
    r, rp = params.r, params.r_prime
    c23 = np.cos(theta_12 / 2) * np.cos(theta_31 / 2) * np.exp(r * rp * np.cos(phi_prime))
    if c23 >= 1.0 - tau_deg:
        raise DegenerateTriadError("derived rays coincide (theta_23 -> 0)")
    if c23 <= tau_deg:
        raise DegenerateTriadError("derived overlap is degenerate")
    theta_23 = 2.0 * float(np.arccos(c23))
    phi_g = principal_angle(-r * rp * np.sin(phi_prime))
    return theta_23, phi_g


# ---------------------------------------------------------------------------
# gauge helpers used by tests and the CLI


def gauge_transform(triad, alphas) -> list[np.ndarray]:
    """Multiply each member of a triad by an independent phase."""
    if len(triad) != len(alphas):
        raise ValueError("need one phase per state")
    return [as_state(psi) * np.exp(1j * a) for psi, a in zip(triad, alphas)]
