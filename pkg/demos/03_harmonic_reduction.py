"""
Quieting one harmonic of a wake profile
=======================================

A rotor blade passing through a wake sees a periodic inflow deficit whose
harmonics radiate as tones. Here we halve the amplitude of one harmonic by
reshaping the inflow inside a band around a function with that harmonic
removed, and then check the result.
"""

from harmonic_bounds import (
    Deficit,
    WakeProfile,
    clamp_candidate,
    design_band,
    trig_spectrum,
    verify_candidate,
)

# Three struts upstream of the rotor, one of them a little wider.
inflow = WakeProfile(
    mean=10.0,
    deficits=[Deficit(0.0, 2.0, 0.15), Deficit(2.1, 2.0, 0.15), Deficit(4.2, 2.0, 0.25)],
)
table = trig_spectrum(inflow, 6)
for j in range(1, 7):
    print(f"j = {j}   a_j = {table.a(j): .5f}   b_j = {table.b(j): .5f}")

# Target the third harmonic, reduce it by a factor of 2.
request, widths, band = design_band(inflow, j=3, q=2.0)
print(f"\nbudget on V(f~ - center) = {widths.budget:.5f}")
print(f"band width from the range bound = {widths.eq12:.5f}")

# The simplest candidate: clip the inflow into the band.
candidate = clamp_candidate(inflow, band)
result = verify_candidate(candidate, band)
print(f"max deviation from center = {result.max_deviation:.5f} (half width {band.delta / 2:.5f})")
print(f"V(f~ - center) = {result.delta_report.total_variation:.5f}, budget ok: {result.budget_ok}")
print(f"|a_3| before = {abs(request.a_j0):.5f}, after = {result.achieved_abs_a:.5f}")
print(f"certified: {result.certified}, reduction factor {result.reduction_factor:.3f}")
