"""
How tight is the variation bound on Fourier coefficients?
=========================================================

A square wave is the extreme case: its first sine coefficient nearly
reaches ``V / pi``. Softening the edges keeps the variation at ``4A`` but
lets the higher harmonics fall off faster than ``1/j``.
"""

import numpy as np

from harmonic_bounds import SmoothedSquare, bound_report_trig

# A unit square wave with ramps of half-width eps around each jump.
for eps in (0.01, 0.1, 0.5, 1.0):
    report = bound_report_trig(SmoothedSquare(1.0, eps), order=9)
    print(f"eps = {eps:4.2f}   V = {report.variation.total_variation:.6f}")
    for row in report.rows[::2]:
        print(
            f"   j = {row.j}   |b_j| = {row.actual_abs_b:.5f}"
            f"   V/(pi j) = {row.bound_variation:.5f}   ratio = {row.ratio_tightness:.3f}"
        )

# The range bound (2/pi)(max - min) does not decay with j at all; it only
# matters for the first harmonic or two.
report = bound_report_trig(SmoothedSquare(1.0, 0.01), order=3)
print("range bound:", np.round(report.rows[0].bound_range, 6))
