"""
Extrema, swings and plateaus in sampled signals
===============================================

The total variation of a sampled periodic signal is the sum of the swings
between consecutive extrema. Flat stretches are collapsed into a single
extremum, and a small plateau tolerance keeps rounding noise from being
counted as oscillation.
"""

import numpy as np

from harmonic_bounds import TrigPoly, variation_periodic
from harmonic_bounds.variation import cyclic_variation

report = variation_periodic(TrigPoly(0.0, [0.0, 1.0], [0.0, 0.0, 0.4]))
print(f"V = {report.total_variation:.6f} from {report.extrema_count} extrema")
for e, d in zip(report.extrema, report.deltas):
    print(f"  {e.kind} at x = {e.x:.4f}, y = {e.y: .4f}, swing to next {d:.4f}")

# A clipped cosine has flat tops; each plateau is one extremum.
x = np.arange(256) * 2 * np.pi / 256
clipped = np.clip(2 * np.cos(x), -1, 1)
print("\nclipped cosine:", cyclic_variation(clipped).extrema_count, "extrema")

# Tiny noise on the plateaus creates spurious extrema unless tolerated.
noisy = clipped + 1e-9 * np.where(np.arange(256) % 2, 1, -1)
print("with noise:", cyclic_variation(noisy).extrema_count, "extrema")
print("with tolerance 1e-8:", cyclic_variation(noisy, plateau_tolerance=1e-8).extrema_count, "extrema")

# Grid variation only ever grows under refinement; refining extrema on the
# function itself recovers the continuous value.
f = TrigPoly(0.0, [0.3] * 20, [0.2] * 20)
for n in (512, 2048, 8192):
    print(n, variation_periodic(f, n).total_variation, variation_periodic(f, n, refine=True).total_variation)
