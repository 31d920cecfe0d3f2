"""Fourier analysis and finite sections on the circle and on SU(2).

Run:  python3 demos/quantization_basics.py
"""
import numpy as np

from schattenlab import (
    SU2,
    Torus,
    assemble_matrix,
    builtin_bessel,
    builtin_coefficient,
    character,
    dual_point,
    extract_symbol,
    fourier_forward,
    make_window,
    singular_values,
)
from schattenlab.groups import rep_matrices
from schattenlab.quantize import default_grid, symbol_hs_integral

# --- the unitary dual of SU(2) below <xi> = 3: spins 0, 1/2, ..., 2
su2 = SU2()
w = make_window(su2, 3.0)
for xi in w.duals:
    print(f"spin {xi.spin:>4}  dim {xi.dim}  lambda {xi.eigenvalue:5.2f}  <xi> {xi.bracket:.4f}")
print("Peter-Weyl basis size:", w.total_dim)

# --- Fourier coefficients of a single Wigner entry: only one block survives
grid = default_grid(w)
half = dual_point(su2, (1,))
f = np.sqrt(2) * rep_matrices(su2, half, grid.nodes)[:, 0, 0]
coeffs = fourier_forward(f, w, grid)
print("f^(1/2) =\n", np.round(coeffs.blocks[1], 12))

# --- a left-invariant operator is block diagonal; its singular values are <xi>^m
A = assemble_matrix(builtin_bessel(su2, -1.0), w, method="quadrature")
sv = singular_values(A)
print("distinct singular values:", np.unique(np.round(sv.values, 12))[::-1])

# --- x-dependent symbol on the circle: multiplication by e^{ix} after a Bessel potential
t1 = Torus(1)
s = builtin_coefficient(t1, character(t1, (1,)), builtin_bessel(t1, -1.0))
B = assemble_matrix(s, make_window(t1, 16))
print("||A||_HS^2 from the matrix:", np.sum(np.abs(B.entries) ** 2))
print("same from the extracted symbol:", symbol_hs_integral(B))
x = np.array([0.9])
print("sigma(0.9, k=3) =", extract_symbol(B, x, dual_point(t1, (3,)))[0, 0],
      " expected", np.exp(0.9j) / np.sqrt(10))
