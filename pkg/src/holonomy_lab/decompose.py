"""Canonical triad reduction, invariant factorization and star geometry.

Any nondegenerate triad can be carried by one unitary into a canonical
position: the first state becomes the highest-weight direction, the second
a pure product state, and the third lands wherever it must.  In that
position the three-point invariant splits into a product of n-1 two-level
invariants, one per star of the third state, which turns the triad phase
into a sum of halved solid angles on the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TAU_DEG
from .core import (
    DegenerateTriadError,
    bargmann,
    inner,
    normalize,
    principal_angle,
)
from .majorana import (
    MajoranaRep,
    coefficients_to_roots,
    pure_product_state,
    roots_to_coefficients,
    spinor_to_star,
    star_to_spinor,
)


@dataclass(frozen=True)
class CanonicalReduction:
    """A triad in canonical position together with the unitary that put it there.

    ``psi1`` is the first basis vector, ``psi2`` the pure product of the
    spinor ``xi``, and ``psi3`` carries the star decomposition ``rep3``.
    """

    psi1: np.ndarray
    psi2: np.ndarray
    psi3: np.ndarray
    transform: np.ndarray
    xi: np.ndarray
    rep3: MajoranaRep

    @property
    def alpha(self) -> complex:
        return complex(self.xi[0])


def _to_e1_unitary(x: np.ndarray) -> np.ndarray:
    """Unitary sending the unit vector x exactly to the first basis vector.

    A phase-fixed Householder reflection: numerically stable for every x,
    including x already along the first direction.
    """
    n = x.size
    delta = np.angle(x[0]) if abs(x[0]) > 0 else 0.0
    u = x.copy()
    u[0] += np.exp(1j * delta)
    h = np.eye(n, dtype=complex) - 2.0 * np.outer(u, u.conj()) / np.vdot(u, u).real
    d = np.ones(n, dtype=complex)
    d[0] = -np.exp(-1j * delta)
    return d[:, None] * h


def _unitary_mapping(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Unitary with U a = b for unit vectors a, b of equal dimension."""
    ma = _to_e1_unitary(a)
    mb = _to_e1_unitary(b)
    return mb.conj().T @ ma


def reduce_triad(psi1, psi2, psi3, tau_deg: float = TAU_DEG) -> CanonicalReduction:
    """Carry a triad into canonical position by one unitary.

    The unitary is built in two stages.  A phase-fixed Householder sends
    psi1 to the first basis vector e1.  The image of psi2 then shares its
    e1 component with the target pure product state |xi>, where

        alpha = e^{i phi_12 / (n-1)} (cos(theta_12 / 2))^{1 / (n-1)}

    on the principal branch and beta real positive, so a second unitary
    acting only on the orthogonal complement of e1 finishes the job.  The
    image of psi3 is factored into its stars; the factorization must
    reproduce the overlap with e1 to 1e-8 or the reduction is rejected.
    """
    v1 = normalize(psi1)
    v2 = normalize(psi2)
    v3 = normalize(psi3)
    n = v1.size
    if v2.size != n or v3.size != n:
        raise ValueError("triad states must share one dimension")
    if n < 2:
        raise ValueError("reduction needs dimension at least 2")
    # raises DegenerateTriadError when a cyclic overlap vanishes
    bargmann([v1, v2, v3], tau_deg=tau_deg)
    ov12 = inner(v1, v2)
    c12 = abs(ov12)
    if c12 >= 1.0 - tau_deg:
        raise DegenerateTriadError("first two rays coincide")
    phi12 = float(np.angle(ov12))

    u1 = _to_e1_unitary(v1)
    p2 = u1 @ v2

    alpha = np.exp(1j * phi12 / (n - 1)) * c12 ** (1.0 / (n - 1))
    beta = np.sqrt(max(0.0, 1.0 - abs(alpha) ** 2))
    xi = np.array([alpha, beta], dtype=complex)
    target = pure_product_state(xi, n)

    u2 = np.eye(n, dtype=complex)
    if n > 1:
        v_perp = p2.copy()
        v_perp[0] = 0.0
        w_perp = target.copy()
        w_perp[0] = 0.0
        nv = np.linalg.norm(v_perp)
        nw = np.linalg.norm(w_perp)
        if nv <= tau_deg or nw <= tau_deg:
            raise DegenerateTriadError("no component orthogonal to e1 to rotate")
        u2[1:, 1:] = _unitary_mapping(v_perp[1:] / nv, w_perp[1:] / nw)

    u = u2 @ u1
    out1 = u @ v1
    out2 = u @ v2
    out3 = u @ v3
    rep3 = coefficients_to_roots(out3)

    rebuilt = roots_to_coefficients(rep3)
    ov31 = inner(v3, v1)
    if abs(np.conjugate(rebuilt[0]) - ov31) > 1e-8:
        raise ValueError("star factorization failed to reproduce the triad overlap")
    return CanonicalReduction(out1, out2, out3, u, xi, rep3)


def bi_factorization(red: CanonicalReduction, tau_deg: float = TAU_DEG) -> np.ndarray:
    """Two-level invariants whose product carries the full triad invariant.

    Factor k is the three-point invariant of the spinors (1, 0), xi and
    xi'_k.  The arguments add up to the argument of the triad invariant
    modulo 2*pi; the moduli differ from it only by a positive overall
    normalization.
    """
    chi0 = np.array([1.0, 0.0], dtype=complex)
    factors = []
    for spin in red.rep3.spinors:
        f = (inner(chi0, red.xi) * inner(red.xi, spin) * inner(spin, chi0))
        if abs(f) <= tau_deg:
            raise DegenerateTriadError("vanishing two-level factor")
        factors.append(f)
    return np.array(factors, dtype=complex)


def solid_angle(n1, n2, n3, cross_tol: float = 1e-9) -> float:
    """Signed solid angle of the spherical triangle (n1, n2, n3).

    Defined as -2 times the argument of the cyclic spinor overlap product
    of the vertices, which makes half of it a two-level geometric phase.
    The magnitude is cross-checked against the oriented spherical excess.
    Degenerate triangles give 0; antipodal vertex pairs are rejected.
    """
    stars = [np.asarray(v, dtype=float).reshape(3) for v in (n1, n2, n3)]
    for i in range(3):
        a, b = stars[i], stars[(i + 1) % 3]
        if np.linalg.norm(a + b) <= 1e-8:
            raise ValueError("antipodal vertices do not span a triangle")
    s1, s2, s3 = (star_to_spinor(v) for v in stars)
    prod = inner(s1, s2) * inner(s2, s3) * inner(s3, s1)
    omega = -2.0 * float(np.angle(prod))

    # independent magnitude and orientation check via the spherical excess
    def arc(u, v):
        return float(np.arctan2(np.linalg.norm(np.cross(u, v)), np.dot(u, v)))

    a = arc(stars[1], stars[2])
    b = arc(stars[2], stars[0])
    c = arc(stars[0], stars[1])
    s = 0.5 * (a + b + c)
    t = (np.tan(0.5 * s) * np.tan(0.5 * (s - a))
         * np.tan(0.5 * (s - b)) * np.tan(0.5 * (s - c)))
    excess = 4.0 * float(np.arctan(np.sqrt(max(0.0, t))))
    triple = float(np.dot(stars[0], np.cross(stars[1], stars[2])))
    oriented = -np.sign(triple) * excess
    if abs(omega - oriented) > cross_tol:
        raise ValueError(
            f"solid angle cross-check failed: {omega} vs excess {oriented}"
        )
    return omega


def phase_from_solid_angles_n3(psi1, psi2, psi3,
                               tau_deg: float = TAU_DEG) -> float:
    """Triad geometric phase in dimension 3 as a half-sum of two solid angles.

    After reduction the first two states sit at the north pole and at the
    star of xi; the third contributes its two stars.  The geometric phase
    is half the sum of the solid angles of the two triangles they make,
    modulo 2*pi.
    """
    v1 = normalize(psi1)
    if v1.size != 3:
        raise ValueError("this identity is specific to dimension 3")
    red = reduce_triad(v1, psi2, psi3, tau_deg=tau_deg)
    north = np.array([0.0, 0.0, 1.0])
    n2hat = spinor_to_star(red.xi)
    stars = red.rep3.stars()
    omega_a = solid_angle(north, n2hat, stars[0])
    omega_b = solid_angle(north, n2hat, stars[1])
    return 0.5 * (omega_a + omega_b)


def _geodesic_gap(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.arccos(np.clip(np.dot(a, b), -1.0, 1.0)))


def _lex_pair(stars: np.ndarray) -> np.ndarray:
    order = sorted(range(len(stars)), key=lambda i: tuple(stars[i]))
    return stars[order]


def star_trajectory(lift) -> np.ndarray:
    """Star pairs along a dimension-3 curve, matched for continuity.

    Each sample is factored into its two stars.  The first sample is
    ordered lexicographically; every later sample is ordered to minimize
    the total great-circle motion relative to the previous one, with ties
    broken lexicographically.  Returns an array of shape (samples, 2, 3).
    """
    if lift.dim != 3:
        raise ValueError("star trajectories are defined for dimension-3 curves")
    out = np.empty((lift.s.size, 2, 3))
    for i, sample in enumerate(lift.psi):
        stars = coefficients_to_roots(sample).stars()
        if i == 0:
            out[0] = _lex_pair(stars)
            continue
        prev = out[i - 1]
        keep = _geodesic_gap(prev[0], stars[0]) + _geodesic_gap(prev[1], stars[1])
        swap = _geodesic_gap(prev[0], stars[1]) + _geodesic_gap(prev[1], stars[0])
        if abs(keep - swap) < 1e-12:
            out[i] = _lex_pair(stars)
        elif keep <= swap:
            out[i] = stars
        else:
            out[i] = stars[::-1]
    return out


def triad_summary(psi1, psi2, psi3, tau_deg: float = TAU_DEG) -> dict:
    """Reduction, factorization and (in dimension 3) solid-angle data."""
    from .angles import extract_angles

    v1, v2, v3 = normalize(psi1), normalize(psi2), normalize(psi3)
    ang = extract_angles(v1, v2, v3, tau_deg=tau_deg)
    red = reduce_triad(v1, v2, v3, tau_deg=tau_deg)
    factors = bi_factorization(red, tau_deg=tau_deg)
    delta = bargmann([v1, v2, v3], tau_deg=tau_deg)
    summary = {
        "angles": ang,
        "reduction": red,
        "factors": factors,
        "factor_phases": [principal_angle(-float(np.angle(f))) for f in factors],
        "bargmann_invariant": delta,
        "geometric_phase": principal_angle(-float(np.angle(delta))),
    }
    if v1.size == 3:
        north = np.array([0.0, 0.0, 1.0])
        n2hat = spinor_to_star(red.xi)
        stars = red.rep3.stars()
        omega_a = solid_angle(north, n2hat, stars[0])
        omega_b = solid_angle(north, n2hat, stars[1])
        summary["solid_angles"] = (omega_a, omega_b)
        summary["half_sum"] = 0.5 * (omega_a + omega_b)
    return summary
