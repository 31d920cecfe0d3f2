"""A non-elliptic operator of order -kappa that lies in every Schatten class.

The symbol is <k>^{-kappa} on the dyadic ray {2^j e_1 : j >= 1} and zero
elsewhere.  Its singular values decay geometrically, so every sum
sum s^r converges, although the order -kappa is sharp.

Run:  python3 demos/atypical_operator.py
"""
import numpy as np

from schattenlab import (
    Torus,
    builtin_dyadic_atypical,
    condition4_sum,
    dyadic_ladder,
    elliptic_flag,
    invariant_singular_values,
    make_window,
)
from schattenlab.criteria import dyadic_order_estimate, sharp_difference_errors

kappa = 0.5
a = builtin_dyadic_atypical(1, kappa)
ladder = dyadic_ladder(4, 512)

sv = invariant_singular_values(a, make_window(Torus(1), 512)).values
print("nonzero singular values:", np.round(sv[sv > 0], 6))

# for kappa * r <= 0.05 the shells shrink by less than 2^-0.05 per octave;
# the ladder cannot separate that from log growth and reports inconclusive
for r in (0.1, 0.5, 1.0, 2.0):
    rep = condition4_sum(a, r, ladder)
    limit = "" if rep.extrapolated_value is None else f"  limit ~ {rep.extrapolated_value:.6f}"
    print(f"r={r:<4} partial {rep.final_value:.6f}  exponent {rep.fitted_tail_exponent:+.3f}"
          f"  {rep.verdict}{limit}")

flag, margin = elliptic_flag(a, make_window(Torus(1), 512))
print("elliptic:", flag, " margin:", margin)
print("fitted order on the support:", dyadic_order_estimate(kappa, 1)[0])
print("max | |Delta a(2^j)| - <2^j>^-kappa | for j=1..10:", max(sharp_difference_errors(kappa, 1)))
