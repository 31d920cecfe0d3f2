"""Where does <xi>^m stop being in the Schatten class S_r?

For elliptic operators of order m on a group of dimension n the answer is
m < -n/r.  The script walks across the threshold on T^1, T^2 and SU(2) and
prints what the dyadic shell detector sees.

Run:  python3 demos/threshold_tour.py
"""
import numpy as np

from schattenlab import SU2, Torus, builtin_bessel, dyadic_ladder, order_threshold, schatten_report

ladder = dyadic_ladder(4, 512)

for g in (Torus(1), Torus(2), SU2()):
    n = g.dimension
    print(f"\n{g}  (dimension {n})")
    for r in (0.5, 1.0, 2.0):
        for m in np.round(-n / r + np.array([-0.6, -0.3, 0.3, 0.6]), 3):
            rep = schatten_report(builtin_bessel(g, m), r, ladder)
            expected = "convergent" if order_threshold(m, n, r) else "divergent"
            mark = "ok" if rep.verdict == expected else "MISMATCH"
            print(f"  r={r:<4} m={m:+7.3f}  shell exponent {rep.fitted_tail_exponent:+.3f}"
                  f"  {rep.verdict:<12} {mark}")

# the boundary itself is left undecided by design
rep = schatten_report(builtin_bessel(Torus(1), -1.0), 1.0, ladder)
print("\nboundary m = -n/r on T^1:", rep.verdict, f"(exponent {rep.fitted_tail_exponent:+.4f})")
