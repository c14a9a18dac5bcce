"""
Chebyshev coefficients obey the same kind of bound
==================================================

Substituting ``x = cos(theta)`` turns a Chebyshev expansion on [-1, 1] into a
cosine series, and the variation is unchanged by the substitution. The
bound picks up a factor 2 from the norm of ``T_j``.
"""

import numpy as np

from harmonic_bounds import PolyCheb, bound_report_cheb, check_variation_identity

rng = np.random.default_rng(7)
f = PolyCheb(rng.uniform(-1, 1, 9))

# Variation of f(cos theta) on [0, pi] against the variation of f on [-1, 1]
check = check_variation_identity(f)
print(f"V in theta = {check.lhs:.9f}   V in x = {check.rhs:.9f}   rel diff = {check.rel_diff:.1e}")

report = bound_report_cheb(f, order=8)
for row in report.rows:
    print(f"j = {row.j}   |a_j| = {row.actual_abs_a:.5f}   2V/(pi j) = {row.bound_variation:.5f}")

# T_5 oscillates five times between -1 and 1, so V = 10 and the bound at
# j = 5 is 4/pi against an actual coefficient of 1.
t5 = bound_report_cheb(PolyCheb([0, 0, 0, 0, 0, 1.0]), order=5).rows[4]
print(f"T_5: bound {t5.bound_variation:.6f}, actual {t5.actual_abs_a:.6f}")
