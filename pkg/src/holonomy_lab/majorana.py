"""Star decomposition of spin states and the two-oscillator basis.

A dimension-n vector with amplitudes A_k (k = 0 at the highest weight)
defines the polynomial

    p(z) = sum_k A_k sqrt(C(n-1, k)) z^k.

Writing p as a product of linear factors (alpha_k + beta_k z) times an
overall scale gives n-1 unit spinors, each a point on the sphere through
n_hat = spinor^dagger sigma spinor.  Roots w map to spinors along (-w, 1);
missing degrees map to (1, 0), a star at the north pole.  The multiset of
stars plus the complex scale determines the vector exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .config import TAU_LEAD
from .core import as_state, inner, normalize

SIGMA = np.array([
    [[0.0, 1.0], [1.0, 0.0]],
    [[0.0, -1.0j], [1.0j, 0.0]],
    [[1.0, 0.0], [0.0, -1.0]],
], dtype=complex)


@dataclass(frozen=True)
class BasisIndex:
    """Spin labels (j, m) of one basis direction; n1 = j+m, n2 = j-m quanta."""

    j: float
    m: float

    def __post_init__(self) -> None:
        if self.j < 0 or abs(2 * self.j - round(2 * self.j)) > 0:
            raise ValueError("j must be a nonnegative half-integer")
        if abs(self.m) > self.j or abs(self.j - self.m - round(self.j - self.m)) > 0:
            raise ValueError("m must differ from j by an integer and satisfy |m| <= j")

    @property
    def n1(self) -> int:
        return round(self.j + self.m)

    @property
    def n2(self) -> int:
        return round(self.j - self.m)

    @classmethod
    def from_dim_index(cls, n: int, k: int) -> "BasisIndex":
        if not 0 <= k < n:
            raise ValueError("index out of range")
        j = (n - 1) / 2.0
        return cls(j, j - k)


def dim_to_spin(n: int) -> float:
    if n < 1:
        raise ValueError("dimension must be at least 1")
    return (n - 1) / 2.0


@dataclass(frozen=True)
class MajoranaRep:
    """Unordered spinor multiset plus a complex scale."""

    spinors: np.ndarray  # shape (n-1, 2), unit rows
    scale: complex

    def __post_init__(self) -> None:
        spinors = np.asarray(self.spinors, dtype=complex).reshape(-1, 2)
        object.__setattr__(self, "spinors", spinors)
        object.__setattr__(self, "scale", complex(self.scale))
        if self.scale == 0:
            raise ValueError("scale must be nonzero")
        norms = np.linalg.norm(spinors, axis=1)
        if spinors.size and np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("spinors must be unit normalized")

    @property
    def dim(self) -> int:
        return self.spinors.shape[0] + 1

    def stars(self) -> np.ndarray:
        return np.array([spinor_to_star(s) for s in self.spinors])


def as_spinor(xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=complex).reshape(2)
    n = np.linalg.norm(xi)
    if n == 0:
        raise ValueError("zero spinor")
    return xi / n


def spinor_to_star(xi) -> np.ndarray:
    xi = as_spinor(xi)
    ab = np.conjugate(xi[0]) * xi[1]
    return np.array([2.0 * ab.real, 2.0 * ab.imag,
                     abs(xi[0]) ** 2 - abs(xi[1]) ** 2])


def star_to_spinor(nhat) -> np.ndarray:
    """Inverse of spinor_to_star with the phase fixed: alpha real >= 0."""
    nhat = np.asarray(nhat, dtype=float).reshape(3)
    if abs(np.linalg.norm(nhat) - 1.0) > 1e-12:
        raise ValueError("star must be a unit vector")
    a = math.sqrt(max(0.0, (1.0 + nhat[2]) / 2.0))
    if a < 1e-14:
        return np.array([0.0, 1.0], dtype=complex)
    b = (nhat[0] + 1j * nhat[1]) / (2.0 * a)
    return np.array([a, b], dtype=complex)


def canonical_spinor(xi) -> np.ndarray:
    # same phase convention as star_to_spinor, without the trip through R^3
    xi = as_spinor(xi)
    pivot = xi[0] if xi[0] != 0 else xi[1]
    return xi * (np.conjugate(pivot) / abs(pivot))


def _majorana_coeffs(psi: np.ndarray) -> np.ndarray:
    n = psi.size
    weights = np.sqrt([math.comb(n - 1, k) for k in range(n)])
    return psi * weights


def _polish_roots(coeffs_desc: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """One guarded Newton step per root.

    Eigenvalue roots of the companion matrix are backward stable but can
    lose a few digits on clustered roots.  A Newton step is applied only
    when it is small and actually reduces |p|, which leaves multiple roots
    untouched instead of scattering them.
    """
    roots = np.asarray(roots, dtype=complex)
    if roots.size == 0:
        return roots
    deriv = np.polyder(coeffs_desc)
    p = np.polyval(coeffs_desc, roots)
    dp = np.polyval(deriv, roots)
    ok = dp != 0
    step = np.zeros_like(roots)
    step[ok] = -p[ok] / dp[ok]
    small = np.abs(step) <= 1e-6 * (1.0 + np.abs(roots))
    candidate = roots + np.where(small, step, 0.0)
    better = np.abs(np.polyval(coeffs_desc, candidate)) <= np.abs(p)
    return np.where(small & better, candidate, roots)


def coefficients_to_roots(psi, tau_lead: float = TAU_LEAD) -> MajoranaRep:
    """Factor a state into its n-1 spinors and a scale.

    Roots come from the companion-matrix eigenvalues of the star
    polynomial; coefficients below ``tau_lead`` times the largest one are
    treated as zero when fixing the effective degree, and each missing
    degree contributes a north-pole spinor (1, 0), listed first.
    """
    psi = as_state(psi)
    if np.max(np.abs(psi)) == 0.0:
        raise ValueError("zero vector has no star decomposition")
    n = psi.size
    coeffs = _majorana_coeffs(psi)
    cutoff = tau_lead * np.max(np.abs(coeffs))
    degree = int(np.max(np.flatnonzero(np.abs(coeffs) > cutoff)))
    spinors = [np.array([1.0, 0.0], dtype=complex)] * (n - 1 - degree)
    if degree > 0:
        desc = coeffs[degree::-1]
        roots = _polish_roots(desc, np.roots(desc))
        residual = np.max(np.abs(np.polyval(desc, roots))) if roots.size else 0.0
        if not np.all(np.isfinite(roots)):
            raise ValueError(f"root finding failed (residual {residual:.3e})")
        for w in roots:
            spinors.append(canonical_spinor(np.array([-w, 1.0], dtype=complex)))
    spinors = np.array(spinors, dtype=complex).reshape(n - 1, 2)
    # the highest surviving coefficient fixes the scale
    factor_poly = np.ones(1, dtype=complex)
    for s in spinors:
        factor_poly = np.convolve(factor_poly, s)
    scale = coeffs[degree] / (math.sqrt(math.factorial(n - 1)) * factor_poly[degree])
    return MajoranaRep(spinors, complex(scale))


def roots_to_coefficients(rep: MajoranaRep) -> np.ndarray:
    """Expand a spinor multiset times scale back into amplitudes."""
    n = rep.dim
    poly = np.ones(1, dtype=complex)
    for s in rep.spinors:
        poly = np.convolve(poly, np.asarray(s, dtype=complex))
    amps = np.empty(n, dtype=complex)
    for k in range(n):
        amps[k] = (rep.scale * poly[k]
                   * math.sqrt(math.factorial(n - 1 - k) * math.factorial(k)))
    return amps


def pure_product_state(xi, n: int) -> np.ndarray:
    """Unit state with all n-1 stars at the star of xi."""
    xi = as_spinor(xi)
    if n < 1:
        raise ValueError("dimension must be at least 1")
    a, b = xi
    amps = np.array([
        math.sqrt(math.comb(n - 1, k)) * a ** (n - 1 - k) * b ** k
        for k in range(n)
    ], dtype=complex)
    return amps


def permanent(matrix) -> complex:
    """Permanent of a small dense complex matrix by Ryser's formula."""
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("permanent needs a square matrix")
    m = a.shape[0]
    if m == 0:
        return 1.0 + 0.0j
    if m > 12:
        raise ValueError("permanent limited to matrices of size 12")
    subsets = np.arange(1, 2 ** m, dtype=np.uint32)
    masks = (subsets[:, None] >> np.arange(m)) & 1  # (2^m - 1, m)
    rowsums = a @ masks.T.astype(complex)  # (m, 2^m - 1)
    prods = rowsums.prod(axis=0)
    signs = np.where((m - masks.sum(axis=1)) % 2 == 0, 1.0, -1.0)
    return complex(np.sum(signs * prods))


def overlap_general(rep_prime: MajoranaRep, rep: MajoranaRep) -> complex:
    """Inner product of two star decompositions of equal dimension.

    Equals conj(scale') * scale times the permanent of the spinor overlap
    matrix, which matches the coefficient-space inner product of the
    expanded vectors.
    """
    if rep_prime.dim != rep.dim:
        raise ValueError("dimension mismatch")
    gram = np.conjugate(rep_prime.spinors) @ rep.spinors.T
    return complex(np.conjugate(rep_prime.scale) * rep.scale * permanent(gram))


def su2_rotation(u) -> np.ndarray:
    """3x3 rotation matrix induced on stars by a special unitary u."""
    u = np.asarray(u, dtype=complex)
    r = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            r[i, j] = 0.5 * np.trace(SIGMA[i] @ u @ SIGMA[j] @ u.conj().T).real
    return r


def _check_su2(u) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > 1e-10:
        raise ValueError("matrix is not unitary")
    if abs(np.linalg.det(u) - 1.0) > 1e-10:
        raise ValueError("matrix must have determinant 1")
    return u


def su2_apply(u, psi) -> np.ndarray:
    """Apply the spin-J representation of u in SU(2) to a state.

    Implemented through the star decomposition: every spinor is rotated by
    u and the product is re-expanded with the same scale.
    """
    u = _check_su2(u)
    rep = coefficients_to_roots(psi)
    rotated = rep.spinors @ u.T
    return roots_to_coefficients(MajoranaRep(rotated, rep.scale))


def random_su2(seed=None) -> np.ndarray:
    from .core import random_unitary

    u = random_unitary(2, seed)
    return u / np.sqrt(np.linalg.det(u))


def spin_matrices(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin operators (J1, J2, J3) in the fixed M-descending basis."""
    j = dim_to_spin(n)
    jp = np.zeros((n, n), dtype=complex)
    for k in range(1, n):
        jp[k - 1, k] = math.sqrt(k * (n - k))  # sqrt((j-m)(j+m+1)) at m = j-k
    j3 = np.diag([j - k for k in range(n)]).astype(complex)
    j1 = (jp + jp.conj().T) / 2.0
    j2 = (jp - jp.conj().T) / 2.0j
    return j1, j2, j3


def weight_residual(psi, nhat) -> float:
    """Norm of (n_hat . J) psi - J psi for a unit state psi."""
    psi = normalize(psi)
    n = psi.size
    j1, j2, j3 = spin_matrices(n)
    nhat = np.asarray(nhat, dtype=float)
    h = nhat[0] * j1 + nhat[1] * j2 + nhat[2] * j3
    return float(np.linalg.norm(h @ psi - dim_to_spin(n) * psi))


def highest_weight_check(xi, n: int, tol: float = 1e-10) -> tuple[bool, float]:
    """Verify that the pure product of xi is highest weight along its star."""
    xi = as_spinor(xi)
    residual = weight_residual(pure_product_state(xi, n), spinor_to_star(xi))
    return residual < tol, residual


def star_matching_distance(stars_a, stars_b) -> float:
    """Largest chordal distance under the best pairing of two star sets."""
    a = np.asarray(stars_a, dtype=float).reshape(-1, 3)
    b = np.asarray(stars_b, dtype=float).reshape(-1, 3)
    if a.shape != b.shape:
        raise ValueError("star sets must have equal size")
    if a.shape[0] == 0:
        return 0.0
    cost = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def stars_equal(stars_a, stars_b, tol: float = 1e-7) -> bool:
    return star_matching_distance(stars_a, stars_b) <= tol
