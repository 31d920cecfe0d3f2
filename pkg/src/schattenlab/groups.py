"""Concrete compact groups: the n-torus and SU(2).

Torus points are vectors in [0, 2pi)^n and the characters are e^{ik.x}, so
the Laplace eigenvalue of k is |k|^2.  SU(2) points are ZYZ Euler triples
(alpha, beta, gamma) with alpha in [0, 2pi), beta in [0, pi] and gamma in
[0, 4pi); the spin-l representation is evaluated in the |l, m> basis with
m = -l, ..., l and carries the Casimir eigenvalue l(l+1).

Dual points of SU(2) are indexed by the integer 2l so that every index is an
integer tuple and the canonical order is plain lexicographic order.

Band limits are measured in "modes": max |k_j| on the torus, the spin l on
SU(2).  A grid of resolution R integrates exactly every finite combination
of representation entries whose total mode is at most R - 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import AliasingError, ConfigurationError, EmptyWindowError

TWO_PI = 2.0 * np.pi

# relative slack used when comparing <xi>^2 against a cutoff squared
_CUTOFF_RTOL = 1e-12


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("torus", "su2"):
            raise ConfigurationError(f"unknown group kind {self.kind!r}")
        if self.n < 1:
            raise ConfigurationError("group dimension must be >= 1")
        if self.kind == "su2" and self.n != 3:
            raise ConfigurationError("SU(2) has dimension 3")

    @property
    def dimension(self) -> int:
        return self.n

    @property
    def point_size(self) -> int:
        """Length of the coordinate vector describing one group point."""
        return self.n if self.kind == "torus" else 3

    @property
    def index_size(self) -> int:
        return self.n if self.kind == "torus" else 1

    @property
    def laplace_normalization(self) -> str:
        if self.kind == "torus":
            return "lambda_k = |k|^2 (characters e^{ik.x}, x in [0,2pi)^n)"
        return "lambda_l = l(l+1) (Casimir of the spin-l representation)"

    @property
    def is_torus(self) -> bool:
        return self.kind == "torus"

    def describe(self) -> dict:
        return {"kind": self.kind, "n": self.n}

    def __str__(self):
        return f"T^{self.n}" if self.is_torus else "SU(2)"


def Torus(n: int = 1) -> GroupDescriptor:
    return GroupDescriptor("torus", int(n))


def SU2() -> GroupDescriptor:
    return GroupDescriptor("su2", 3)


@dataclass(frozen=True)
class DualPoint:
    """One class [xi] of the unitary dual.

    ``index`` is k for the torus and (2l,) for SU(2).
    """

    index: tuple
    dim: int
    eigenvalue: float

    @property
    def bracket(self) -> float:
        return float(np.sqrt(1.0 + self.eigenvalue))

    @property
    def spin(self) -> float:
        # only meaningful on SU(2)
        return self.index[0] / 2.0


def dual_point(g: GroupDescriptor, index) -> DualPoint:
    """Build the dual point of ``g`` with the given integer index."""
    idx = tuple(int(v) for v in np.atleast_1d(index))
    if len(idx) != g.index_size:
        raise TypeError(f"index {idx} does not label a representation of {g}")
    if g.is_torus:
        return DualPoint(idx, 1, float(sum(v * v for v in idx)))
    j2 = idx[0]
    if j2 < 0:
        raise TypeError("SU(2) index 2l must be non-negative")
    return DualPoint(idx, j2 + 1, j2 * (j2 + 2) / 4.0)


def _check_member(g: GroupDescriptor, xi: DualPoint):
    if len(xi.index) != g.index_size:
        raise TypeError(f"{xi} is not a dual point of {g}")
    if g.is_torus and xi.dim != 1:
        raise TypeError("torus representations are one-dimensional")
    if not g.is_torus and xi.dim != xi.index[0] + 1:
        raise TypeError(f"{xi} is not a dual point of SU(2)")


def laplace_eigenvalue(g: GroupDescriptor, xi: DualPoint) -> float:
    _check_member(g, xi)
    if g.is_torus:
        return float(sum(v * v for v in xi.index))
    j2 = xi.index[0]
    return j2 * (j2 + 2) / 4.0


def dual_arrays(g: GroupDescriptor, cutoff: float):
    """Vectorized dual enumeration.

    Returns ``(indices, dims, eigenvalues)`` for every [xi] with
    <xi> <= cutoff, in canonical (lexicographic) order.  ``indices`` has
    shape (M, index_size).
    """
    cutoff = float(cutoff)
    if not cutoff >= 1.0:
        raise EmptyWindowError(f"cutoff {cutoff} < 1 gives an empty window")
    bound = cutoff * cutoff * (1.0 + _CUTOFF_RTOL) - 1.0
    if g.is_torus:
        kmax = int(np.floor(np.sqrt(max(bound, 0.0))))
        axis = np.arange(-kmax, kmax + 1)
        grids = np.meshgrid(*([axis] * g.n), indexing="ij")
        ks = np.stack([gr.ravel() for gr in grids], axis=1)
        lam = np.sum(ks * ks, axis=1).astype(float)
        keep = lam <= bound
        ks, lam = ks[keep], lam[keep]
        return ks, np.ones(len(ks), dtype=int), lam
    # l(l+1) <= bound  <=>  j2 (j2 + 2) <= 4 bound
    j2max = int(np.floor(-1.0 + np.sqrt(1.0 + 4.0 * max(bound, 0.0))))
    j2 = np.arange(0, j2max + 2)
    lam = j2 * (j2 + 2) / 4.0
    j2 = j2[lam <= bound]
    lam = j2 * (j2 + 2) / 4.0
    return j2[:, None], j2 + 1, lam


def enumerate_dual(g: GroupDescriptor, cutoff: float) -> list[DualPoint]:
    """All dual points with <xi> <= cutoff, lexicographic on the index."""
    ks, dims, lam = dual_arrays(g, cutoff)
    return [DualPoint(tuple(int(v) for v in k), int(d), float(e))
            for k, d, e in zip(ks, dims, lam)]


def mode_of(g: GroupDescriptor, xi: DualPoint) -> float:
    """Band-limit measure of a single dual point."""
    if g.is_torus:
        return float(max(abs(v) for v in xi.index))
    return xi.spin


# ---------------------------------------------------------------- SU(2) algebra

@lru_cache(maxsize=None)
def spin_generators(j2: int):
    """(Jz, Jy) of spin j2/2 in the basis m = -l, ..., l."""
    ell = j2 / 2.0
    m = np.arange(j2 + 1) - ell
    jz = np.diag(m).astype(complex)
    # J+ |m> = sqrt(l(l+1) - m(m+1)) |m+1>
    up = np.zeros((j2 + 1, j2 + 1), dtype=complex)
    for a in range(j2):
        up[a + 1, a] = np.sqrt(ell * (ell + 1) - m[a] * (m[a] + 1))
    jy = (up - up.conj().T) / 2j
    return jz, jy


@lru_cache(maxsize=None)
def _jy_eig(j2: int):
    _, jy = spin_generators(j2)
    mu, vec = np.linalg.eigh(jy)
    return mu, vec


def wigner_d_matrices(j2: int, euler: np.ndarray) -> np.ndarray:
    """D^l(alpha, beta, gamma) = e^{-i alpha Jz} e^{-i beta Jy} e^{-i gamma Jz}.

    The small-d factor comes from the eigendecomposition of Jy.  ``euler``
    has shape (N, 3); the result has shape (N, 2l+1, 2l+1).
    """
    euler = np.atleast_2d(np.asarray(euler, dtype=float))
    alpha, beta, gamma = euler[:, 0], euler[:, 1], euler[:, 2]
    m = np.arange(j2 + 1) - j2 / 2.0
    mu, vec = _jy_eig(j2)
    phase = np.exp(-1j * beta[:, None] * mu[None, :])
    small_d = np.einsum("ak,nk,bk->nab", vec, phase, vec.conj())
    left = np.exp(-1j * alpha[:, None] * m[None, :])
    right = np.exp(-1j * gamma[:, None] * m[None, :])
    return left[:, :, None] * small_d * right[:, None, :]


def euler_to_su2(euler: np.ndarray) -> np.ndarray:
    """Fundamental (spin 1/2) matrices of Euler triples, shape (N, 2, 2)."""
    return wigner_d_matrices(1, euler)


def su2_to_euler(u: np.ndarray) -> np.ndarray:
    """Inverse of :func:`euler_to_su2` with canonical angle ranges."""
    u = np.asarray(u, dtype=complex).reshape(-1, 2, 2)
    a, b = u[:, 0, 0], u[:, 0, 1]
    beta = 2.0 * np.arctan2(np.abs(b), np.abs(a))
    pa, pb = np.angle(a), np.angle(b)
    tiny = 1e-14
    alpha = np.where(np.abs(b) < tiny, 0.0, pa + pb)
    alpha = np.where(np.abs(a) < tiny, 0.0, alpha)
    gamma = np.where(np.abs(b) < tiny, 2.0 * pa, pa - pb)
    gamma = np.where(np.abs(a) < tiny, -2.0 * pb, gamma)
    # (alpha, gamma) ~ (alpha + 2pi, gamma + 2pi) ~ (alpha, gamma + 4pi)
    shift = np.floor(alpha / TWO_PI)
    alpha = alpha - shift * TWO_PI
    gamma = np.mod(gamma - shift * TWO_PI, 2.0 * TWO_PI)
    return np.stack([alpha, beta, gamma], axis=1)


# ---------------------------------------------------------------- representations

def rep_matrices(g: GroupDescriptor, xi: DualPoint, points) -> np.ndarray:
    """Representation matrices xi(x) at many points, shape (N, d, d)."""
    _check_member(g, xi)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != g.point_size:
        raise TypeError(f"points of {g} have {g.point_size} coordinates")
    if g.is_torus:
        k = np.asarray(xi.index, dtype=float)
        return np.exp(1j * (pts @ k))[:, None, None]
    return wigner_d_matrices(xi.index[0], pts)


def rep_matrix(g: GroupDescriptor, xi: DualPoint, x) -> np.ndarray:
    """Unitary matrix xi(x) of size d_xi."""
    return rep_matrices(g, xi, np.asarray(x, dtype=float)[None, :])[0]


def character_table(g: GroupDescriptor, indices: np.ndarray, points) -> np.ndarray:
    """Torus only: e^{i k.x} for all points (rows) and all k (columns)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    return np.exp(1j * (pts @ np.asarray(indices, dtype=float).T))


# ---------------------------------------------------------------- group law

def identity_point(g: GroupDescriptor) -> np.ndarray:
    return np.zeros(g.point_size)


def multiply(g: GroupDescriptor, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if g.is_torus:
        return np.mod(x + y, TWO_PI)
    prod = euler_to_su2(np.atleast_2d(x)) @ euler_to_su2(np.atleast_2d(y))
    out = su2_to_euler(prod)
    return out[0] if x.ndim == 1 and y.ndim == 1 else out


def inverse(g: GroupDescriptor, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if g.is_torus:
        return np.mod(-x, TWO_PI)
    u = euler_to_su2(np.atleast_2d(x))
    out = su2_to_euler(np.conj(np.swapaxes(u, 1, 2)))
    return out[0] if x.ndim == 1 else out


def random_points(g: GroupDescriptor, count: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed random points, shape (count, point_size)."""
    if g.is_torus:
        return rng.uniform(0.0, TWO_PI, size=(count, g.n))
    q = rng.normal(size=(count, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    u = np.empty((count, 2, 2), dtype=complex)
    u[:, 0, 0] = q[:, 0] + 1j * q[:, 1]
    u[:, 0, 1] = q[:, 2] + 1j * q[:, 3]
    u[:, 1, 0] = -np.conj(u[:, 0, 1])
    u[:, 1, 1] = np.conj(u[:, 0, 0])
    return su2_to_euler(u)


# ---------------------------------------------------------------- quadrature

@dataclass(frozen=True)
class QuadratureGrid:
    group: GroupDescriptor
    nodes: np.ndarray
    weights: np.ndarray
    resolution: int

    @property
    def band_limit(self) -> int:
        """Largest total mode integrated exactly."""
        return self.resolution - 1

    def __len__(self):
        return len(self.weights)

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Haar integral of samples whose first axis runs over the nodes."""
        return np.tensordot(self.weights, values, axes=(0, 0))


def haar_quadrature(g: GroupDescriptor, resolution: int) -> QuadratureGrid:
    """Normalized Haar quadrature.

    Torus: ``resolution`` uniform nodes per axis.  SU(2): R uniform nodes in
    alpha on [0, 2pi), ceil(R/2) Gauss-Legendre nodes in cos(beta) and 2R
    uniform nodes in gamma on [0, 4pi).  Either grid is exact for
    combinations of representation entries of total mode <= R - 1.
    """
    R = int(resolution)
    if R < 2:
        raise ConfigurationError("quadrature resolution must be >= 2")
    if g.is_torus:
        axis = TWO_PI * np.arange(R) / R
        grids = np.meshgrid(*([axis] * g.n), indexing="ij")
        nodes = np.stack([gr.ravel() for gr in grids], axis=1)
        weights = np.full(len(nodes), 1.0 / R ** g.n)
        return QuadratureGrid(g, nodes, weights, R)
    alpha = TWO_PI * np.arange(R) / R
    t, wt = np.polynomial.legendre.leggauss(-(-R // 2))
    beta = np.arccos(t)
    gamma = 2.0 * TWO_PI * np.arange(2 * R) / (2 * R)
    A, B, C = np.meshgrid(alpha, beta, gamma, indexing="ij")
    WB = np.meshgrid(np.ones(R), wt / 2.0, np.ones(2 * R), indexing="ij")[1]
    nodes = np.stack([A.ravel(), B.ravel(), C.ravel()], axis=1)
    weights = WB.ravel() / (R * 2 * R)
    return QuadratureGrid(g, nodes, weights, R)


def resolution_for(band: float) -> int:
    """Smallest resolution integrating total mode ``band`` exactly."""
    return max(2, int(np.ceil(band)) + 1)


def require_band(grid: QuadratureGrid, band: float, what: str = "integrand"):
    if band > grid.band_limit + 1e-12:
        raise AliasingError(
            f"{what} has mode {band:g} but the grid of resolution "
            f"{grid.resolution} is exact only up to {grid.band_limit}"
        )

