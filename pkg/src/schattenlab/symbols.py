"""Matrix-valued global symbols sigma(x, [xi]) and symbol-side norms.

A :class:`MatrixSymbol` is a rule, never a stored array: it maps a batch of
group points and one dual point to a stack of d_xi x d_xi matrices.  Symbols
of the form ``f(x, xi) * I`` additionally expose a vectorized ``scalar``
rule, which the norm and spectrum code uses to avoid per-dual matrix work.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Callable, Optional

import numpy as np

from .errors import (
    ConfigurationError,
    ContractError,
    ParameterError,
    ShapeError,
    UndefinedFitError,
    UnsupportedGroupError,
)
from .groups import (
    DualPoint,
    GroupDescriptor,
    Torus,
    dual_point,
    haar_quadrature,
    identity_point,
    rep_matrices,
)
from .windows import TruncationWindow, shell_cutoffs


def brackets_of(g: GroupDescriptor, indices: np.ndarray) -> np.ndarray:
    """<xi> for an (M, index_size) array of dual indices."""
    indices = np.asarray(indices)
    if g.is_torus:
        lam = np.sum(indices.astype(float) ** 2, axis=1)
    else:
        j2 = indices[:, 0].astype(float)
        lam = j2 * (j2 + 2.0) / 4.0
    return np.sqrt(1.0 + lam)


def dims_of(g: GroupDescriptor, indices: np.ndarray) -> np.ndarray:
    if g.is_torus:
        return np.ones(len(indices), dtype=int)
    return np.asarray(indices)[:, 0].astype(int) + 1


@dataclass(frozen=True, eq=False)
class MatrixSymbol:
    """sigma(x, [xi]) as an evaluation rule plus declared metadata.

    ``rule(points, xi)`` must return an array of shape (N, d, d) or (d, d)
    (the latter broadcast over points, natural for invariant symbols).
    ``scalar(points, indices)``, when present, returns f with
    sigma(x, xi) = f(x, xi) I, shaped (N, M) or (1, M).
    ``x_band`` is the largest x-mode of the symbol (0 when invariant).
    """

    group: GroupDescriptor
    rule: Callable
    invariant: bool = False
    label: str = "symbol"
    declared_order: Optional[float] = None
    declared_rho_delta: Optional[tuple] = None
    scalar: Optional[Callable] = None
    x_band: float = 0.0
    params: dict = field(default_factory=dict)

    def batch(self, points, xi: DualPoint) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.asarray(self.rule(pts, xi), dtype=complex)
        if out.ndim == 2:
            out = np.broadcast_to(out, (len(pts),) + out.shape)
        if out.shape[1:] != (xi.dim, xi.dim):
            raise ShapeError(
                f"{self.label} returned blocks of shape {out.shape[1:]} at {xi.index}, "
                f"expected {(xi.dim, xi.dim)}"
            )
        return out

    def __call__(self, x, xi: DualPoint) -> np.ndarray:
        return self.batch(np.asarray(x, dtype=float)[None, :], xi)[0]

    @property
    def is_scalar(self) -> bool:
        return self.scalar is not None

    def scalar_table(self, points, indices) -> np.ndarray:
        """f(x, xi) on all (point, dual) pairs, shape (N, M)."""
        if self.scalar is None:
            raise ContractError(f"{self.label} is not a scalar multiple of the identity")
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        vals = np.asarray(self.scalar(pts, np.asarray(indices)), dtype=complex)
        return np.broadcast_to(vals, (len(pts), len(indices)))

    def at(self, x, index) -> np.ndarray:
        return self(x, dual_point(self.group, index))

    # linear structure (used by linearity checks and user composition)
    def __add__(self, other: "MatrixSymbol") -> "MatrixSymbol":
        if other.group != self.group:
            raise TypeError("symbols live on different groups")
        scalar = None
        if self.scalar is not None and other.scalar is not None:
            def scalar(p, k, a=self.scalar, b=other.scalar):
                return np.asarray(a(p, k)) + np.asarray(b(p, k))
        return MatrixSymbol(
            self.group,
            lambda p, xi: self.batch(p, xi) + other.batch(p, xi),
            invariant=self.invariant and other.invariant,
            label=f"({self.label} + {other.label})",
            scalar=scalar,
            x_band=max(self.x_band, other.x_band),
        )

    def __rmul__(self, c) -> "MatrixSymbol":
        c = complex(c)
        scalar = None
        if self.scalar is not None:
            def scalar(p, k, f=self.scalar):
                return c * np.asarray(f(p, k))
        return MatrixSymbol(
            self.group,
            lambda p, xi: c * self.batch(p, xi),
            invariant=self.invariant,
            label=f"{c:g}*{self.label}",
            declared_order=self.declared_order if c != 0 else None,
            scalar=scalar,
            x_band=self.x_band,
        )

    def __sub__(self, other):
        return self + (-1.0) * other


def _scalar_symbol(g, f, label, invariant=True, order=None, rho_delta=None,
                   x_band=0.0, params=None):
    """Symbol f(x, xi) I built from a vectorized scalar rule."""

    def rule(points, xi):
        vals = np.asarray(f(points, np.asarray([xi.index])), dtype=complex)
        vals = np.broadcast_to(vals, (len(points), 1))[:, 0]
        return vals[:, None, None] * np.eye(xi.dim)[None, :, :]

    return MatrixSymbol(g, rule, invariant=invariant, label=label,
                        declared_order=order, declared_rho_delta=rho_delta,
                        scalar=f, x_band=x_band, params=params or {})


# ---------------------------------------------------------------- builtins

def builtin_bessel(g: GroupDescriptor, m: float) -> MatrixSymbol:
    """Bessel potential (1 + L)^{m/2}: sigma(xi) = <xi>^m I."""
    m = float(m)

    def f(points, indices):
        return (brackets_of(g, indices) ** m)[None, :]

    return _scalar_symbol(g, f, f"bessel({m:g})", order=m, rho_delta=(1.0, 0.0),
                          params={"name": "bessel", "m": m})


def dyadic_mask(indices: np.ndarray) -> np.ndarray:
    """Membership in {2^k e_1 : k >= 1}."""
    indices = np.asarray(indices)
    k0 = indices[:, 0]
    rest_zero = np.all(indices[:, 1:] == 0, axis=1)
    return rest_zero & (k0 >= 2) & ((k0 & (k0 - 1)) == 0)


def builtin_dyadic_atypical(n: int, kappa: float) -> MatrixSymbol:
    """<xi>^{-kappa} on the dyadic ray {2^k e_1 : k >= 1}, zero elsewhere."""
    kappa = float(kappa)
    if not kappa > 0:
        raise ParameterError("kappa must be positive")
    g = Torus(n)

    def f(points, indices):
        indices = np.asarray(indices)
        vals = np.where(dyadic_mask(indices), brackets_of(g, indices) ** (-kappa), 0.0)
        return vals[None, :]

    return _scalar_symbol(g, f, f"dyadic(n={n}, kappa={kappa:g})", order=-kappa,
                          rho_delta=(0.0, 0.0),
                          params={"name": "dyadic", "n": int(n), "kappa": kappa})


def builtin_multiplier(g: GroupDescriptor, f: Callable, label: str = "multiplier",
                       order: Optional[float] = None,
                       scalar: Optional[Callable] = None) -> MatrixSymbol:
    """Left-invariant symbol sigma(xi) = f(xi).

    ``f`` maps a DualPoint to a d_xi x d_xi matrix (a plain number is
    accepted on the torus).  ``scalar``, if given, is the vectorized rule
    indices -> values for the case f(xi) = value * I.
    """

    def rule(points, xi):
        val = np.asarray(f(xi), dtype=complex)
        if val.ndim == 0 and xi.dim == 1:
            val = val.reshape(1, 1)
        if val.shape != (xi.dim, xi.dim):
            raise ShapeError(f"{label}: f returned shape {val.shape} at {xi.index}")
        return val

    sc = None
    if scalar is not None:
        def sc(points, indices):
            return np.asarray(scalar(np.asarray(indices)), dtype=complex)[None, :]

    return MatrixSymbol(g, rule, invariant=True, label=label, declared_order=order,
                        scalar=sc, params={"name": "multiplier", "f": label})


def named_multiplier(g: GroupDescriptor, name: str) -> MatrixSymbol:
    """Multipliers addressable by name: identity, zero, laplacian."""
    if name == "identity":
        return builtin_multiplier(g, lambda xi: np.eye(xi.dim), "identity", order=0.0,
                                  scalar=lambda k: np.ones(len(k)))
    if name == "zero":
        return builtin_multiplier(g, lambda xi: np.zeros((xi.dim, xi.dim)), "zero",
                                  order=0.0, scalar=lambda k: np.zeros(len(k)))
    if name == "laplacian":
        return builtin_multiplier(
            g, lambda xi: xi.eigenvalue * np.eye(xi.dim), "laplacian", order=2.0,
            scalar=lambda k: brackets_of(g, k) ** 2 - 1.0)
    raise ParameterError(f"unknown multiplier {name!r}")


@dataclass(frozen=True)
class GroupPolynomial:
    """Finite combination sum_t c_t eta_t(x)_{ij} of representation entries.

    ``terms`` holds (index, i, j, coefficient) tuples; on the torus i = j = 0.
    """

    group: GroupDescriptor
    terms: tuple

    def __call__(self, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.zeros(len(pts), dtype=complex)
        for index, i, j, c in self.terms:
            eta = dual_point(self.group, index)
            out += complex(c) * rep_matrices(self.group, eta, pts)[:, i, j]
        return out

    @property
    def band(self) -> float:
        if not self.terms:
            return 0.0
        if self.group.is_torus:
            return float(max(max(abs(v) for v in idx) for idx, *_ in self.terms))
        return float(max(idx[0] for idx, *_ in self.terms)) / 2.0

    def describe(self) -> list:
        return [[list(idx), i, j, [complex(c).real, complex(c).imag]]
                for idx, i, j, c in self.terms]


def character(g: GroupDescriptor, index, coefficient=1.0) -> GroupPolynomial:
    """The single term coefficient * eta(x)_{00}; e^{ik.x} on the torus."""
    idx = tuple(int(v) for v in np.atleast_1d(index))
    return GroupPolynomial(g, ((idx, 0, 0, complex(coefficient)),))


def builtin_coefficient(g: GroupDescriptor, c, base: MatrixSymbol,
                        x_band: Optional[float] = None) -> MatrixSymbol:
    """sigma(x, xi) = c(x) base(x, xi).

    ``c`` is a :class:`GroupPolynomial` or a vectorized callable; a bare
    callable must come with its ``x_band``.
    """
    if base.group != g:
        raise TypeError("coefficient and base symbol live on different groups")
    if isinstance(c, GroupPolynomial):
        band = c.band
        desc = c.describe()
    else:
        if x_band is None:
            raise ParameterError("a coefficient callable must declare x_band")
        band = float(x_band)
        desc = getattr(c, "__name__", "callable")

    def rule(points, xi):
        return c(points)[:, None, None] * base.batch(points, xi)

    scalar = None
    if base.scalar is not None:
        def scalar(points, indices):
            return c(points)[:, None] * base.scalar_table(points, indices)

    return MatrixSymbol(g, rule, invariant=False, label=f"coeff*{base.label}",
                        declared_order=base.declared_order,
                        declared_rho_delta=base.declared_rho_delta,
                        scalar=scalar, x_band=band + base.x_band,
                        params={"name": "coeff", "c": desc, "base": base.params})


# ---------------------------------------------------------------- differences

def difference_op_torus(s: MatrixSymbol, alpha) -> MatrixSymbol:
    """Forward difference Delta^alpha in the lattice variable, x held fixed.

    Delta^alpha a(k) = sum_{beta <= alpha} (-1)^{|alpha - beta|} C(alpha, beta) a(k + beta).
    """
    g = s.group
    if not g.is_torus:
        raise UnsupportedGroupError("difference operators are realized on the torus only")
    alpha = tuple(int(a) for a in np.atleast_1d(alpha))
    if len(alpha) != g.n or min(alpha) < 0:
        raise ParameterError(f"multi-index {alpha} does not fit T^{g.n}")
    terms = []
    for beta in product(*(range(a + 1) for a in alpha)):
        coef = 1
        for a, b in zip(alpha, beta):
            coef *= comb(a, b)
        sign = -1.0 if (sum(alpha) - sum(beta)) % 2 else 1.0
        terms.append((np.asarray(beta), sign * coef))

    def rule(points, xi):
        k = np.asarray(xi.index)
        acc = None
        for beta, coef in terms:
            val = coef * s.batch(points, dual_point(g, k + beta))
            acc = val if acc is None else acc + val
        return acc

    scalar = None
    if s.scalar is not None:
        def scalar(points, indices):
            indices = np.asarray(indices)
            acc = None
            for beta, coef in terms:
                val = coef * s.scalar_table(points, indices + beta[None, :])
                acc = val if acc is None else acc + val
            return acc

    return MatrixSymbol(g, rule, invariant=s.invariant, label=f"Delta^{alpha} {s.label}",
                        scalar=scalar, x_band=s.x_band)


# ---------------------------------------------------------------- sampling helpers

def _default_points(s: MatrixSymbol, grid=None) -> np.ndarray:
    if s.invariant:
        return identity_point(s.group)[None, :]
    if grid is None:
        grid = haar_quadrature(s.group, max(2, int(2 * s.x_band) + 2))
    return grid.nodes


def singular_table(s: MatrixSymbol, points, window: TruncationWindow):
    """Singular values of sigma(x, xi) for all points and window duals.

    Returns a list over duals of arrays shaped (N, d), or, for scalar
    symbols, a single (N, M) array of |f| (each value repeated d times).
    """
    pts = np.atleast_2d(points)
    if s.is_scalar:
        return np.abs(s.scalar_table(pts, window.indices))
    out = []
    for xi in window.duals:
        out.append(np.linalg.svd(s.batch(pts, xi), compute_uv=False))
    return out


def dual_summands(s: MatrixSymbol, points, window: TruncationWindow, p: float,
                  kind: str = "schatten") -> np.ndarray:
    """Per-dual summands of the S_p(G^) or l^p(G^) norm, shape (N, M).

    schatten: d ||sigma||_{S_p}^p ;  lp: d^{p(2/p - 1/2)} ||sigma||_HS^p.
    """
    p = float(p)
    if not p > 0:
        raise ParameterError("p must be positive")
    dims = window.dims.astype(float)
    table = singular_table(s, points, window)
    if isinstance(table, np.ndarray):
        # sigma = f I_d : both kinds collapse to d^2 |f|^p
        return dims[None, :] ** 2 * table ** p
    cols = []
    for d, sv in zip(dims, table):
        if kind == "schatten":
            cols.append(d * np.sum(sv ** p, axis=1))
        elif kind == "lp":
            cols.append(d ** (2.0 - p / 2.0) * np.sum(sv ** 2, axis=1) ** (p / 2.0))
        else:
            raise ParameterError(f"unknown norm kind {kind!r}")
    return np.stack(cols, axis=1)


# ---------------------------------------------------------------- norms

@dataclass(frozen=True)
class SymbolNormReport:
    norm_kind: str
    window: TruncationWindow
    value: float
    per_shell: list

    def to_dict(self) -> dict:
        return {
            "norm_kind": self.norm_kind,
            "window": self.window.describe(),
            "value": self.value,
            "per_shell": [[c, v] for c, v in self.per_shell],
        }


def symbol_schatten_dual_norm(s: MatrixSymbol, x, p: float, w: TruncationWindow) -> float:
    """(sum_xi d_xi ||sigma(x, xi)||_{S_p}^p)^{1/p} over the window."""
    vals = dual_summands(s, np.asarray(x, dtype=float)[None, :], w, p, "schatten")
    return float(np.sum(vals) ** (1.0 / p))


def symbol_lp_dual_norm(s: MatrixSymbol, x, p: float, w: TruncationWindow) -> float:
    """(sum_xi d_xi^{p(2/p-1/2)} ||sigma(x, xi)||_HS^p)^{1/p} over the window."""
    vals = dual_summands(s, np.asarray(x, dtype=float)[None, :], w, p, "lp")
    return float(np.sum(vals) ** (1.0 / p))


def symbol_mixed_norm(s: MatrixSymbol, p1: float, p2: float, w: TruncationWindow,
                      grid, kind: str = "schatten") -> SymbolNormReport:
    """L^{p1}(G, S_{p2}(G^)) norm (or L^{p1}(G, l^{p2}(G^)) with kind='lp').

    The x-integral uses ``grid``; adequacy for the symbol's x-dependence is
    the caller's responsibility.
    """
    if len(w) == 0 or len(grid) == 0:
        raise ConfigurationError("empty window or grid")
    if not p1 > 0:
        raise ParameterError("p1 must be positive")
    summ = dual_summands(s, grid.nodes, w, p2, kind)
    per_shell = []
    for c in shell_cutoffs(w.cutoff):
        inner = np.sum(summ[:, w.within(c)], axis=1) ** (p1 / p2)
        per_shell.append((c, float(grid.integrate(inner) ** (1.0 / p1))))
    tag = "mixed" if kind == "schatten" else "mixed_lp"
    return SymbolNormReport(f"{tag}(p1={p1:g},p2={p2:g})", w, per_shell[-1][1], per_shell)


def shell_report(s: MatrixSymbol, x, p: float, w: TruncationWindow,
                 kind: str = "schatten") -> SymbolNormReport:
    """Dual norm at one point with partial values at dyadic cutoffs."""
    summ = dual_summands(s, np.asarray(x, dtype=float)[None, :], w, p, kind)[0]
    per_shell = [(c, float(np.sum(summ[w.within(c)]) ** (1.0 / p)))
                 for c in shell_cutoffs(w.cutoff)]
    tag = "schatten_dual" if kind == "schatten" else "lp_dual"
    return SymbolNormReport(f"{tag}(p={p:g})", w, per_shell[-1][1], per_shell)


# ---------------------------------------------------------------- order estimation

def estimate_symbol_order(s: MatrixSymbol, alpha, sample_window: TruncationWindow,
                          grid=None) -> tuple[float, float]:
    """Fit e in max_x ||Delta^alpha sigma(x, xi)||_op ~ C <xi>^e.

    Least squares of log-norm against log <xi> over the window.  Exact zeros
    are dropped (they bound nothing from below).  Returns (e, rms residual).
    """
    alpha = tuple(int(a) for a in np.atleast_1d(alpha)) if alpha is not None else ()
    target = s
    if any(alpha):
        target = difference_op_torus(s, alpha)
    points = _default_points(target, grid)
    table = singular_table(target, points, sample_window)
    if isinstance(table, np.ndarray):
        norms = np.max(table, axis=0)
    else:
        norms = np.array([np.max(sv) for sv in table])
    keep = norms > 0
    br = sample_window.brackets[keep]
    if not np.any(keep) or np.ptp(np.log(br)) == 0.0:
        raise UndefinedFitError(f"{target.label} vanishes (or is constant in <xi>) on the window")
    X = np.stack([np.ones(br.size), np.log(br)], axis=1)
    y = np.log(norms[keep])
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ coef
    return float(coef[1]), float(np.sqrt(np.mean(resid ** 2)))
