import numpy as np
import pytest

from schattenlab import (
    SU2,
    AliasingError,
    Torus,
    apply_op,
    assemble_matrix,
    builtin_bessel,
    builtin_coefficient,
    builtin_dyadic_atypical,
    builtin_multiplier,
    character,
    dual_point,
    extract_symbol,
    fourier_forward,
    fourier_inverse,
    haar_quadrature,
    make_window,
    named_multiplier,
    schwartz_kernel,
)
from schattenlab.groups import multiply, random_points, rep_matrices
from schattenlab.quantize import (
    FourierCoefficients,
    WindowRangeError,
    default_grid,
    ell_p_dual_norm,
    lp_norm,
    symbol_hs_integral,
)
from schattenlab.symbols import GroupPolynomial

T1, T2, S = Torus(1), Torus(2), SU2()


def random_coeffs(w, rng):
    c = rng.standard_normal(w.total_dim) + 1j * rng.standard_normal(w.total_dim)
    return FourierCoefficients.from_vector(w, c)


def test_window_basis_numbering():
    w = make_window(S, 2.0)
    assert w.total_dim == 1 + 4 + 9
    labels = w.basis_labels()
    assert len(labels) == w.total_dim == len(set(labels))
    assert labels[1] == ((1,), 0, 0) and labels[4] == ((1,), 1, 1)
    assert w.column(2, 1, 2) == 5 + 3 + 2


def test_forward_examples():
    w = make_window(T1, 3.0)
    grid = default_grid(w)
    co = fourier_forward(np.exp(2j * grid.nodes[:, 0]), w, grid)
    for xi, b in zip(w.duals, co.blocks):
        assert abs(b[0, 0] - (xi.index == (2,))) < 1e-15
    ws = make_window(S, 2.0)
    gs = default_grid(ws)
    co = fourier_forward(np.ones(len(gs)), ws, gs)
    assert abs(co.blocks[0][0, 0] - 1) < 1e-14
    assert all(np.abs(b).max() < 1e-14 for b in co.blocks[1:])
    half = dual_point(S, (1,))
    f = np.sqrt(2) * rep_matrices(S, half, gs.nodes)[:, 0, 0]
    co = fourier_forward(f, ws, gs)
    want = np.zeros((2, 2))
    want[0, 0] = np.sqrt(2) / 2
    assert np.abs(co.blocks[1] - want).max() < 1e-14
    assert np.abs(co.blocks[0]).max() < 1e-14 and np.abs(co.blocks[2]).max() < 1e-14


@pytest.mark.parametrize("g", [T1, T2, S], ids=str)
def test_round_trip_and_plancherel(g, rng):
    w = make_window(g, 3.5)
    grid = default_grid(w)
    co = random_coeffs(w, rng)
    f = fourier_inverse(co, grid.nodes)
    back = fourier_forward(f, w, grid)
    assert np.abs(back.vector() - co.vector()).max() < 1e-10
    l2 = grid.integrate(np.abs(f) ** 2)
    assert abs(l2 - co.l2_norm_squared()) < 1e-10 * l2


def test_aliasing_detected():
    w = make_window(T1, 6.0)
    with pytest.raises(AliasingError):
        fourier_forward(np.ones(4), w, haar_quadrature(T1, 4))


@pytest.mark.parametrize("g", [T1, S], ids=str)
def test_apply_identity_and_bessel(g, rng):
    w = make_window(g, 3.0)
    grid = default_grid(w)
    co = random_coeffs(w, rng)
    f = fourier_inverse(co, grid.nodes)
    assert np.abs(apply_op(named_multiplier(g, "identity"), f, w, grid) - f).max() < 1e-12
    if g.is_torus:
        for k in range(-2, 3):
            e = np.exp(1j * k * grid.nodes[:, 0])
            out = apply_op(builtin_bessel(g, -1.5), e, w, grid)
            assert np.abs(out - (1 + k * k) ** -0.75 * e).max() < 1e-13


def test_apply_multiplication_operator():
    w = make_window(T1, 4.0)
    grid = default_grid(w, extra_band=1)
    c = builtin_coefficient(T1, character(T1, (1,)), builtin_bessel(T1, 0.0))
    x = grid.nodes[:, 0]
    out = apply_op(c, np.exp(2j * x), w, grid)
    assert np.abs(out - np.exp(1j * x) * np.exp(2j * x)).max() < 1e-13


def test_assemble_examples():
    w = make_window(T1, 2.5)
    assert np.allclose(assemble_matrix(named_multiplier(T1, "identity"), w).entries, np.eye(5))
    A = assemble_matrix(builtin_bessel(T1, -2.0), w, method="quadrature")
    assert np.abs(A.entries - np.diag([0.2, 0.5, 1, 0.5, 0.2])).max() < 1e-15
    shift = assemble_matrix(builtin_coefficient(T1, character(T1, (1,)), builtin_bessel(T1, 0.0)), w)
    want = np.diag(np.ones(4), -1)
    assert np.abs(shift.entries - want).max() < 1e-14


@pytest.mark.parametrize("g,cut", [(T2, 3.0), (S, 3.0)], ids=["T2", "SU2"])
def test_invariant_blocks_match_quadrature(g, cut):
    w = make_window(g, cut)
    rot = builtin_multiplier(g, lambda xi: np.diag(np.arange(1, xi.dim + 1) * (1 + xi.eigenvalue) ** -0.5)
                             + 0.1j * np.eye(xi.dim, k=1), "nonscalar")
    for s in (builtin_bessel(g, -1.0), rot):
        quad = assemble_matrix(s, w, method="quadrature").entries
        blk = assemble_matrix(s, w, method="blocks").entries
        assert np.abs(quad - blk).max() < 1e-12
        mask = np.zeros_like(blk, dtype=bool)
        for off, d in zip(w.offsets, w.dims):
            mask[off:off + d * d, off:off + d * d] = True
        assert np.abs(quad[~mask]).max(initial=0.0) <= 1e-12


def test_linearity():
    w = make_window(T1, 5.0)
    a = builtin_coefficient(T1, character(T1, (2,)), builtin_bessel(T1, -1.0))
    b = builtin_bessel(T1, 0.5)
    lhs = assemble_matrix(a + b, w, method="quadrature").entries
    rhs = assemble_matrix(a, w).entries + assemble_matrix(b, w, method="quadrature").entries
    assert np.abs(lhs - rhs).max() < 1e-12


@pytest.mark.parametrize("g", [T1, S], ids=str)
def test_extraction_round_trip_for_multipliers(g, rng):
    w = make_window(g, 4.0)
    s = builtin_bessel(g, -1.3)
    A = assemble_matrix(s, w)
    for x in random_points(g, 3, rng):
        for xi in w.duals:
            assert np.abs(extract_symbol(A, x, xi) - s(x, xi)).max() < 1e-10
    I = assemble_matrix(named_multiplier(g, "identity"), w)
    xi = w.duals[-1]
    assert np.abs(extract_symbol(I, np.zeros(g.point_size), xi) - np.eye(xi.dim)).max() < 1e-12


def test_extraction_of_coefficient_symbol(rng):
    c = builtin_coefficient(T1, character(T1, (1,)), builtin_bessel(T1, 0.0))
    w = make_window(T1, 6.0)
    A = assemble_matrix(c, w)
    for x in rng.uniform(0, 2 * np.pi, 5):
        for xi in w.duals[:-1]:            # the last column is truncated
            assert abs(extract_symbol(A, [x], xi)[0, 0] - np.exp(1j * x)) < 1e-10
    with pytest.raises(WindowRangeError):
        extract_symbol(A, [0.0], dual_point(T1, (40,)))


def test_extraction_round_trip_su2_coefficient(rng):
    # c(x) = D^{1/2}_{01}(x): interior spins survive, x-band 1/2
    c = GroupPolynomial(S, (((1,), 0, 1, 1.0),))
    s = builtin_coefficient(S, c, builtin_bessel(S, -1.0))
    w = make_window(S, 4.0)
    A = assemble_matrix(s, w)
    x = random_points(S, 2, rng)
    for xi in w.duals:
        if xi.spin + c.band > w.band:
            continue
        assert np.abs(extract_symbol(A, x[0], xi) - s(x[0], xi)).max() < 1e-9


@pytest.mark.parametrize("g", [T1, S], ids=str)
def test_plancherel_hs_identity(g):
    c = character(g, (1,)) if g.is_torus else GroupPolynomial(g, (((2,), 1, 0, 0.5),))
    s = builtin_coefficient(g, c, builtin_bessel(g, -1.0))
    A = assemble_matrix(s, make_window(g, 5.0 if g.is_torus else 3.0))
    fro = np.sum(np.abs(A.entries) ** 2)
    assert abs(symbol_hs_integral(A) - fro) <= 1e-8 * fro


def test_kernel_examples():
    w = make_window(T1, 2.5)
    I = named_multiplier(T1, "identity")
    x, y = np.array([0.4]), np.array([1.3])
    dirichlet = sum(np.exp(1j * k * (x[0] - y[0])) for k in range(-2, 3))
    assert abs(schwartz_kernel(I, x, y, w) - dirichlet) < 1e-13
    assert abs(schwartz_kernel(assemble_matrix(I, w), x, y) - dirichlet) < 1e-13
    b = builtin_bessel(T1, -2.0)
    w7 = make_window(T1, np.sqrt(50))
    want = sum(1 / (1 + k * k) for k in range(-7, 8))
    assert abs(schwartz_kernel(b, x, x, w7) - want) < 1e-13


def test_kernel_of_invariant_symbol_is_convolution(rng):
    w = make_window(S, 3.0)
    s = builtin_bessel(S, -1.0)
    x, y, z = random_points(S, 3, rng)
    k1 = schwartz_kernel(s, x, y, w)
    k2 = schwartz_kernel(s, multiply(S, z, x), multiply(S, z, y), w)
    assert abs(k1 - k2) < 1e-11


def test_kernel_reproduces_operator(rng):
    w = make_window(T1, 3.0)
    grid = default_grid(w, extra_band=1)
    s = builtin_coefficient(T1, character(T1, (1,)), builtin_bessel(T1, -1.0))
    co = random_coeffs(w, rng)
    f = fourier_inverse(co, grid.nodes)
    x = np.array([0.77])
    direct = apply_op(s, f, w, grid, points=x[None, :])[0]
    K = np.array([schwartz_kernel(s, x, y, w) for y in grid.nodes])
    assert abs(grid.integrate(K * f) - direct) < 1e-8


def test_lp_helpers():
    grid = haar_quadrature(T1, 16)
    f = np.exp(1j * grid.nodes[:, 0])
    assert abs(lp_norm(f, grid, 3) - 1) < 1e-14
    assert lp_norm(f, grid, np.inf) == pytest.approx(1)
    w = make_window(T1, 2.0)
    co = fourier_forward(f, w, grid)
    assert abs(ell_p_dual_norm(co, np.inf) - 1) < 1e-14


def test_dyadic_assembles_diagonal():
    w = make_window(T1, 20)
    A = assemble_matrix(builtin_dyadic_atypical(1, 1.0), w, method="quadrature")
    d = np.diag(A.entries).real
    nz = [xi.index[0] for xi, v in zip(w.duals, d) if abs(v) > 1e-14]
    assert nz == [2, 4, 8, 16]
