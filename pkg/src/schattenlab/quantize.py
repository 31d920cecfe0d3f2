"""Group Fourier transform, the quantization map and finite sections.

Basis functions are e_{xi,i,j} = sqrt(d_xi) xi_ij, numbered as in
:class:`~schattenlab.windows.TruncationWindow`.  Op(sigma) sends e_{xi,i,j} to
sqrt(d_xi) (xi(x) sigma(x, xi))_{ij}; the finite section stores the Gram
entries (Op(sigma) e_col, e_row) computed by exact quadrature.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ContractError, NumericError, ParameterError
from .groups import (
    DualPoint,
    QuadratureGrid,
    character_table,
    haar_quadrature,
    inverse,
    multiply,
    rep_matrices,
    require_band,
    resolution_for,
)
from .symbols import MatrixSymbol
from .windows import TruncationWindow


class WindowRangeError(ParameterError, IndexError):
    """Dual point outside the truncation window."""


def basis_table(w: TruncationWindow, points) -> np.ndarray:
    """e_{xi,i,j}(x) for all points (rows) and basis columns, shape (N, D)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    g = w.group
    if g.is_torus:
        return character_table(g, w.indices, pts)
    cols = []
    for xi in w.duals:
        mats = rep_matrices(g, xi, pts)
        cols.append(np.sqrt(xi.dim) * mats.reshape(len(pts), -1))
    return np.concatenate(cols, axis=1)


def default_grid(w: TruncationWindow, extra_band: float = 0.0, factor: int = 2) -> QuadratureGrid:
    """Smallest grid exact for products of ``factor`` window functions."""
    return haar_quadrature(w.group, resolution_for(factor * w.band + extra_band))


# ---------------------------------------------------------------- Fourier analysis

@dataclass(frozen=True)
class FourierCoefficients:
    """f^(xi) for every dual point of a window, in canonical order."""

    window: TruncationWindow
    blocks: list

    def vector(self) -> np.ndarray:
        """Peter-Weyl coefficients c_{xi,i,j} = sqrt(d) f^(xi)_{ji}."""
        return np.concatenate([np.sqrt(b.shape[0]) * b.T.ravel() for b in self.blocks])

    @classmethod
    def from_vector(cls, w: TruncationWindow, c: np.ndarray) -> "FourierCoefficients":
        blocks = []
        for off, d in zip(w.offsets, w.dims):
            blk = np.asarray(c[off:off + d * d]).reshape(d, d).T / np.sqrt(d)
            blocks.append(blk)
        return cls(w, blocks)

    def l2_norm_squared(self) -> float:
        return float(sum(b.shape[0] * np.sum(np.abs(b) ** 2) for b in self.blocks))


def fourier_forward(samples, w: TruncationWindow, grid: QuadratureGrid) -> FourierCoefficients:
    """f^(xi) = int f(x) xi(x)^* dx for every xi in the window.

    Exact for functions band-limited within the window, provided the grid
    integrates products of two window entries (mode 2 * band).
    """
    require_band(grid, 2 * w.band, "window basis product")
    f = np.asarray(samples, dtype=complex)
    if f.shape != (len(grid),):
        raise ConfigurationError("samples must have one value per grid node")
    E = basis_table(w, grid.nodes)
    c = E.conj().T @ (grid.weights * f)
    return FourierCoefficients.from_vector(w, c)


def fourier_inverse(coeffs: FourierCoefficients, points) -> np.ndarray:
    """f(x) = sum_xi d_xi Tr[xi(x) f^(xi)] at the given points."""
    return basis_table(coeffs.window, points) @ coeffs.vector()


# ---------------------------------------------------------------- quantization

def _images(s: MatrixSymbol, w: TruncationWindow, points) -> np.ndarray:
    """Columns Op(s) e_{xi,i,j} sampled at the points, shape (N, D)."""
    pts = np.atleast_2d(points)
    g = w.group
    if g.is_torus and s.is_scalar:
        return character_table(g, w.indices, pts) * s.scalar_table(pts, w.indices)
    cols = []
    for xi in w.duals:
        prod = rep_matrices(g, xi, pts) @ s.batch(pts, xi)
        cols.append(np.sqrt(xi.dim) * prod.reshape(len(pts), -1))
    return np.concatenate(cols, axis=1)


def apply_op(s: MatrixSymbol, f, w: TruncationWindow, grid: QuadratureGrid,
             points=None) -> np.ndarray:
    """Truncated quantization sum_xi d Tr[xi(x) sigma(x, xi) f^(xi)].

    ``f`` holds samples on the grid nodes; the result is sampled on
    ``points`` (grid nodes by default).
    """
    coeffs = fourier_forward(f, w, grid)
    pts = grid.nodes if points is None else np.atleast_2d(points)
    return _images(s, w, pts) @ coeffs.vector()


@dataclass(frozen=True)
class OperatorMatrix:
    """Finite section of an operator in the Peter-Weyl basis of a window."""

    window: TruncationWindow
    entries: np.ndarray
    label: str = "operator"
    resolution: int = 0

    def __post_init__(self):
        D = self.window.total_dim
        if self.entries.shape != (D, D):
            raise ConfigurationError(f"entries must be {D}x{D}")

    @property
    def is_hermitian(self) -> bool:
        E = self.entries
        return bool(np.allclose(E, E.conj().T, atol=1e-12 * max(1.0, np.abs(E).max())))

    def with_entries(self, entries, label=None) -> "OperatorMatrix":
        return OperatorMatrix(self.window, np.asarray(entries, dtype=complex),
                              label or self.label, self.resolution)


def invariant_blocks(s: MatrixSymbol, w: TruncationWindow) -> np.ndarray:
    """Block-diagonal section of a left-invariant symbol: kron(I_d, sigma(xi))."""
    if not s.invariant:
        raise ContractError(f"{s.label} depends on x")
    D = w.total_dim
    out = np.zeros((D, D), dtype=complex)
    x0 = np.zeros(w.group.point_size)
    if s.is_scalar:
        vals = s.scalar_table(x0[None, :], w.indices)[0]
    for pos, (xi, off) in enumerate(zip(w.duals, w.offsets)):
        d = xi.dim
        sig = vals[pos] * np.eye(d) if s.is_scalar else s(x0, xi)
        out[off:off + d * d, off:off + d * d] = np.kron(np.eye(d), sig)
    return out


def assemble_matrix(s: MatrixSymbol, w: TruncationWindow, grid: QuadratureGrid | None = None,
                    method: str = "auto") -> OperatorMatrix:
    """Gram matrix M[(eta,k,l), (xi,i,j)] = (Op(s) e_{xi,i,j}, e_{eta,k,l}).

    ``method='quadrature'`` applies the operator to every basis function and
    integrates against the basis; ``'blocks'`` is the shortcut for invariant
    symbols; ``'auto'`` picks blocks when the symbol is invariant.
    """
    if s.group != w.group:
        raise TypeError("symbol and window live on different groups")
    if method == "auto":
        method = "blocks" if s.invariant else "quadrature"
    if method == "blocks":
        return OperatorMatrix(w, invariant_blocks(s, w), s.label, 0)
    if method != "quadrature":
        raise ParameterError(f"unknown assembly method {method!r}")
    need = 2 * w.band + s.x_band
    if grid is None:
        grid = haar_quadrature(w.group, resolution_for(need))
    require_band(grid, need, "operator matrix integrand")
    E = basis_table(w, grid.nodes)
    C = _images(s, w, grid.nodes)
    M = E.conj().T @ (grid.weights[:, None] * C)
    if not np.all(np.isfinite(M)):
        raise NumericError("non-finite operator entries")
    return OperatorMatrix(w, M, s.label, grid.resolution)


def operator_images(A: OperatorMatrix, points) -> np.ndarray:
    """(A e_col)(x) for every basis column, shape (N, D)."""
    return basis_table(A.window, points) @ A.entries


def extract_symbol_batch(A: OperatorMatrix, points, xi: DualPoint) -> np.ndarray:
    """sigma_A(x, xi) = xi(x)^* (A xi)(x) at many points, shape (N, d, d)."""
    w = A.window
    pos = w.position(xi)
    if pos < 0:
        raise WindowRangeError(f"{xi.index} lies outside the window")
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    d = xi.dim
    off = int(w.offsets[pos])
    cols = basis_table(w, pts) @ A.entries[:, off:off + d * d]
    a_xi = cols.reshape(len(pts), d, d) / np.sqrt(d)
    rep = rep_matrices(w.group, xi, pts)
    return np.conj(np.swapaxes(rep, 1, 2)) @ a_xi


def extract_symbol(A: OperatorMatrix, x, xi: DualPoint) -> np.ndarray:
    return extract_symbol_batch(A, np.asarray(x, dtype=float)[None, :], xi)[0]


def symbol_hs_integral(A: OperatorMatrix, grid: QuadratureGrid | None = None) -> float:
    """sum_xi d_xi int ||sigma_A(x, xi)||_HS^2 dx via symbol extraction."""
    w = A.window
    if grid is None:
        grid = haar_quadrature(w.group, resolution_for(4 * w.band))
    require_band(grid, 4 * w.band, "|extracted symbol|^2")
    total = 0.0
    for xi in w.duals:
        sig = extract_symbol_batch(A, grid.nodes, xi)
        hs2 = np.sum(np.abs(sig) ** 2, axis=(1, 2))
        total += xi.dim * float(grid.integrate(hs2))
    return total


def schwartz_kernel(obj, x, y, w: TruncationWindow | None = None) -> complex:
    """Truncated kernel K(x, y).

    For a symbol: sum_xi d Tr[xi(y^{-1} x) sigma(x, xi)] over ``w``.
    For an :class:`OperatorMatrix`: sum M[r, c] e_r(x) conj(e_c(y)).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if isinstance(obj, OperatorMatrix):
        ex = basis_table(obj.window, x[None, :])[0]
        ey = basis_table(obj.window, y[None, :])[0]
        return complex(ex @ obj.entries @ ey.conj())
    if w is None:
        raise ConfigurationError("a window is required to truncate the kernel sum")
    g = w.group
    z = multiply(g, inverse(g, y), x)
    total = 0.0 + 0.0j
    for xi in w.duals:
        total += xi.dim * np.trace(rep_matrices(g, xi, z[None, :])[0] @ obj(x, xi))
    return complex(total)


# ---------------------------------------------------------------- Hausdorff-Young norms

def lp_norm(samples, grid: QuadratureGrid, p: float) -> float:
    """||f||_{L^p(G)} by quadrature; p = inf gives the max over the nodes."""
    a = np.abs(np.asarray(samples))
    if np.isinf(p):
        return float(a.max())
    return float(grid.integrate(a ** p) ** (1.0 / p))


def ell_p_dual_norm(coeffs: FourierCoefficients, p: float) -> float:
    """(sum_xi d^{p(2/p-1/2)} ||f^(xi)||_HS^p)^{1/p}; p = inf: sup d^{-1/2} ||f^(xi)||_HS."""
    dims = np.array([b.shape[0] for b in coeffs.blocks], dtype=float)
    hs = np.array([np.sqrt(np.sum(np.abs(b) ** 2)) for b in coeffs.blocks])
    if np.isinf(p):
        return float(np.max(dims ** -0.5 * hs))
    return float(np.sum((dims ** (2.0 / p - 0.5) * hs) ** p) ** (1.0 / p))


def conjugate_exponent(p: float) -> float:
    if p == 1:
        return float("inf")
    if np.isinf(p):
        return 1.0
    return p / (p - 1.0)
