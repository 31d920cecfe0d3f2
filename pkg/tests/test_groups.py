import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schattenlab import (
    SU2,
    ConfigurationError,
    EmptyWindowError,
    Torus,
    dual_point,
    enumerate_dual,
    haar_quadrature,
    laplace_eigenvalue,
    rep_matrix,
)
from schattenlab.groups import (
    euler_to_su2,
    inverse,
    multiply,
    random_points,
    rep_matrices,
    su2_to_euler,
)


def test_descriptor_validation():
    with pytest.raises(ConfigurationError):
        Torus(0)
    assert SU2().dimension == 3
    assert Torus(2).dimension == 2


def test_enumerate_torus_examples():
    assert [xi.index for xi in enumerate_dual(Torus(1), 2.5)] == [(-2,), (-1,), (0,), (1,), (2,)]
    assert [xi.index for xi in enumerate_dual(Torus(1), 1.0)] == [(0,)]


def test_enumerate_su2_example():
    duals = enumerate_dual(SU2(), 2.0)
    assert [xi.spin for xi in duals] == [0.0, 0.5, 1.0]
    assert [xi.dim for xi in duals] == [1, 2, 3]


def test_cutoff_below_one_is_empty():
    with pytest.raises(EmptyWindowError):
        enumerate_dual(Torus(1), 0.99)


@pytest.mark.parametrize("n,cut", [(1, 7.3), (2, 5.0), (2, 6.1), (3, 3.2)])
def test_dual_completeness_brute_force(n, cut):
    R = int(cut) + 1
    count = sum(1 for k in itertools.product(range(-R, R + 1), repeat=n)
                if 1 + sum(v * v for v in k) <= cut * cut)
    assert len(enumerate_dual(Torus(n), cut)) == count


def test_canonical_order_is_lexicographic():
    idx = [xi.index for xi in enumerate_dual(Torus(2), 4.0)]
    assert idx == sorted(idx)


def test_laplace_eigenvalues():
    assert laplace_eigenvalue(Torus(2), dual_point(Torus(2), (3, 4))) == 25
    assert laplace_eigenvalue(SU2(), dual_point(SU2(), (2,))) == 2
    assert laplace_eigenvalue(SU2(), dual_point(SU2(), (0,))) == 0
    assert laplace_eigenvalue(Torus(3), dual_point(Torus(3), (0, 0, 0))) == 0


def test_dual_mismatch_is_type_error():
    with pytest.raises(TypeError):
        rep_matrix(SU2(), dual_point(Torus(1), (1,)), np.zeros(3))


def test_rep_examples():
    m = rep_matrix(Torus(1), dual_point(Torus(1), (3,)), np.array([np.pi / 2]))
    assert np.allclose(m, [[np.exp(1.5j * np.pi)]], atol=1e-15)
    x = np.array([0.3, 1.1, 2.0])
    assert np.allclose(rep_matrix(SU2(), dual_point(SU2(), (0,)), x), [[1.0]])
    assert np.allclose(rep_matrix(SU2(), dual_point(SU2(), (1,)), np.zeros(3)), np.eye(2), atol=1e-15)


def test_spin_half_is_defining_representation(rng):
    x = random_points(SU2(), 20, rng)
    half = rep_matrices(SU2(), dual_point(SU2(), (1,)), x)
    assert np.allclose(half, euler_to_su2(x), atol=1e-13)


@pytest.mark.parametrize("g", [Torus(1), Torus(2), SU2()], ids=str)
def test_unitarity_and_dimension_identity(g, rng):
    x = random_points(g, 100, rng)
    for xi in enumerate_dual(g, 6.0):
        D = rep_matrices(g, xi, x)
        err = np.abs(D @ np.conj(np.swapaxes(D, 1, 2)) - np.eye(xi.dim)).max()
        assert err <= 1e-12
        assert np.allclose(np.sum(np.abs(D) ** 2, axis=(1, 2)), xi.dim, atol=1e-12)


@pytest.mark.parametrize("g", [Torus(2), SU2()], ids=str)
def test_homomorphism(g, rng):
    x, y = random_points(g, 30, rng), random_points(g, 30, rng)
    xy = multiply(g, x, y)
    for xi in enumerate_dual(g, 4.0):
        lhs = rep_matrices(g, xi, xy)
        rhs = rep_matrices(g, xi, x) @ rep_matrices(g, xi, y)
        assert np.abs(lhs - rhs).max() <= 1e-12
        inv = rep_matrices(g, xi, inverse(g, x))
        assert np.abs(inv - np.conj(np.swapaxes(rep_matrices(g, xi, x), 1, 2))).max() <= 1e-12


@settings(max_examples=50, deadline=None)
@given(st.floats(0, 2 * np.pi), st.floats(0, np.pi), st.floats(0, 4 * np.pi))
def test_euler_round_trip(a, b, c):
    e = np.array([[a, b, c]])
    u = euler_to_su2(e)
    assert np.allclose(euler_to_su2(su2_to_euler(u)), u, atol=1e-10)


def test_quadrature_examples():
    g1 = haar_quadrature(Torus(1), 8)
    assert len(g1) == 8 and np.allclose(g1.weights, 1 / 8)
    for k in range(-7, 8):
        val = g1.integrate(np.exp(1j * k * g1.nodes[:, 0]))
        assert abs(val - (k == 0)) <= 1e-14
    g2 = haar_quadrature(Torus(2), 4)
    assert len(g2) == 16 and np.allclose(g2.weights, 1 / 16)
    with pytest.raises(ConfigurationError):
        haar_quadrature(Torus(1), 1)


@pytest.mark.parametrize("R", [2, 5, 8, 11])
def test_weights_sum_to_one(R):
    for g in (Torus(1), Torus(3), SU2()):
        grid = haar_quadrature(g, R)
        assert np.all(grid.weights > 0)
        assert abs(grid.weights.sum() - 1.0) <= 1e-12


def test_schur_orthogonality_su2():
    g = SU2()
    grid = haar_quadrature(g, 6)
    duals = enumerate_dual(g, np.sqrt(1 + 2.5 * 3.5))   # spins up to 5/2
    assert grid.band_limit == 5
    tables = {xi.index: rep_matrices(g, xi, grid.nodes).reshape(len(grid), -1) for xi in duals}
    for a in duals:
        for b in duals:
            if a.spin + b.spin > grid.band_limit:
                continue
            gram = (tables[a.index].T * grid.weights) @ tables[b.index].conj()
            want = np.eye(a.dim ** 2) / a.dim if a.index == b.index else 0.0
            assert np.abs(gram - want).max() <= 1e-12
