import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from harmonic_bounds import (
    BandSpec,
    CenterNotZeroedError,
    DesignRequest,
    SmoothedSquare,
    TrigPoly,
    WakeProfile,
    Deficit,
    clamp_candidate,
    constant,
    design_band,
    design_width,
    make_band,
    make_center,
    trig_spectrum,
    variation_budget,
    verify_candidate,
)
from harmonic_bounds.functions import Samples, sample_uniform, uniform_grid

WORKED = TrigPoly(4.0, [0.0, 0.0, 0.5])  # 2 + 0.5 cos 3x


def clipped_cos3_a3(half_width):
    """a_3 of clip(0.5 cos 3x, +-h) by adaptive quadrature with the kinks as breakpoints."""
    kinks = []
    for k in range(3):
        for s in (1, -1):
            t = math.acos(max(-1.0, min(1.0, s * 2 * half_width)))
            for base in (t, 2 * math.pi - t):
                kinks.append(((base + 2 * math.pi * k) / 3) % (2 * math.pi))
    integrand = lambda x: max(-half_width, min(half_width, 0.5 * math.cos(3 * x))) * math.cos(3 * x)
    total, _ = quad(integrand, 0, 2 * math.pi, points=sorted(kinks), limit=400, epsabs=1e-13)
    return total / math.pi


# frozen from a 30-digit closed-form quarter-period integral; clipped_cos3_a3 cross-checks
A3_CLIPPED_PI_OVER_8 = 0.2434169818398119
A3_CLIPPED_0_4 = 0.2476842122656545


def test_frozen_clip_oracles():
    assert clipped_cos3_a3(math.pi / 16) == pytest.approx(A3_CLIPPED_PI_OVER_8, abs=1e-10)
    assert clipped_cos3_a3(0.2) == pytest.approx(A3_CLIPPED_0_4, abs=1e-10)


class TestRequest:
    def test_validation(self):
        with pytest.raises(ValueError):
            DesignRequest(j=0, q=2.0, a_j0=1.0)
        with pytest.raises(ValueError):
            DesignRequest(j=1, q=1.0, a_j0=1.0)
        with pytest.raises(ValueError):
            DesignRequest(j=1, q=2.0, a_j0=1.0, n_extrema=0)
        with pytest.raises(ValueError):
            DesignRequest(j=1, q=2.0, a_j0=1.0, center_kind="fancy")


class TestMakeCenter:
    def test_minimal_removes_only_harmonic(self):
        center = make_center(WORKED, 3, "minimal")
        x = uniform_grid(256)
        assert np.max(np.abs(center(x) - 2.0)) < 1e-10

    def test_trivial_is_mean(self):
        center = make_center(WORKED, 3, "trivial")
        assert center(1.0) == pytest.approx(2.0, abs=1e-12)

    def test_minimal_keeps_other_harmonics(self):
        spec = TrigPoly(0.0, [1.0], [0.0, 0.3])
        center = make_center(spec, 2, "minimal")
        table = trig_spectrum(center, 3)
        assert abs(table.a(2)) < 1e-10 and abs(table.b(2)) < 1e-10
        assert table.a(1) == pytest.approx(1.0, abs=1e-10)
        # independent check of the zeroed harmonic by adaptive quadrature
        for trig in (math.cos, math.sin):
            coeff = quad(lambda x: center(x) * trig(2 * x), 0, 2 * math.pi, epsabs=1e-13)[0] / math.pi
            assert abs(coeff) < 1e-10

    @pytest.mark.parametrize("kind", ["trivial", "minimal"])
    @pytest.mark.parametrize(
        "spec",
        [SmoothedSquare(1.0, 0.2), WakeProfile(3.0, [Deficit(1.0, 0.8, 0.2)]), WORKED],
        ids=["square", "wake", "trig"],
    )
    def test_target_coefficients_vanish(self, spec, kind):
        for j in (1, 2, 3):
            table = trig_spectrum(make_center(spec, j, kind), j)
            assert abs(table.a(j)) <= 1e-10
            assert abs(table.b(j)) <= 1e-10


class TestBudgetAndWidths:
    def test_budget(self):
        assert variation_budget(DesignRequest(3, 2.0, 0.5)) == pytest.approx(0.75 * math.pi)
        assert variation_budget(DesignRequest(5, 3.0, 0.0)) == 0.0
        assert variation_budget(DesignRequest(1, 1.0 + 1e-12, 1.0)) == pytest.approx(math.pi)

    def test_widths(self):
        widths = design_width(DesignRequest(3, 2.0, 0.5, n_extrema=4))
        assert widths.eq11 == pytest.approx(0.1875 * math.pi)
        assert widths.eq11 == pytest.approx(0.5890486225480862)
        assert widths.eq12 == pytest.approx(math.pi / 8)
        assert widths.recommended == widths.eq11
        assert widths.provenance == "max_of_both"
        assert not widths.already_attained

    def test_widths_without_extrema_count(self):
        widths = design_width(DesignRequest(3, 2.0, -0.5))
        assert widths.eq11 is None
        assert widths.recommended == widths.eq12 == pytest.approx(math.pi / 8)

    def test_zero_amplitude_already_attained(self):
        widths = design_width(DesignRequest(2, 4.0, 0.0, n_extrema=3))
        assert widths.already_attained
        assert widths.recommended == widths.budget == widths.eq12 == 0.0
        with pytest.raises(ValueError):
            make_band(constant(0.0), DesignRequest(2, 4.0, 0.0))

    @given(
        st.floats(-10, 10).filter(lambda a: abs(a) > 1e-6),
        st.integers(1, 50),
        st.floats(1.01, 100),
        st.integers(1, 100),
    )
    def test_width_formulas_invert(self, a, j, q, n):
        widths = design_width(DesignRequest(j, q, a, n_extrema=n))
        assert widths.eq11 * n * q == pytest.approx(abs(a) * math.pi * j, rel=1e-12)
        assert widths.eq12 * 2 * q == pytest.approx(abs(a) * math.pi, rel=1e-12)


class TestClamp:
    def test_inside_is_identity(self):
        band = BandSpec(constant(0.0), 10.0, DesignRequest(1, 2.0, 1.0))
        spec = TrigPoly(0.0, [1.0])
        clamped = clamp_candidate(spec, band, 512)
        assert np.array_equal(clamped.values, sample_uniform(spec, 512))

    def test_saturated(self):
        center = TrigPoly(0.0, [0.0, 0.3])
        band = BandSpec(center, 1.0, DesignRequest(1, 2.0, 1.0))
        shifted = TrigPoly(20.0, [0.0, 0.3])
        clamped = clamp_candidate(shifted, band, 256)
        np.testing.assert_allclose(clamped.values, sample_uniform(center, 256) + 0.5, atol=1e-14)

    def test_worked_clamp_matches_quadrature(self):
        band = BandSpec(constant(2.0), 0.4, DesignRequest(3, 2.0, 0.5))
        clamped = clamp_candidate(WORKED, band, 4096)
        x = uniform_grid(4096)
        np.testing.assert_allclose(clamped.values, 2.0 + np.clip(0.5 * np.cos(3 * x), -0.2, 0.2), atol=1e-15)
        assert trig_spectrum(clamped, 3).a(3) == pytest.approx(A3_CLIPPED_0_4, abs=1e-6)

    @given(st.integers(0, 2**32 - 1), st.floats(0.01, 3.0))
    def test_containment(self, seed, delta):
        rng = np.random.default_rng(seed)
        center = TrigPoly(rng.uniform(-5, 5), rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4))
        spec = TrigPoly(rng.uniform(-5, 5), rng.uniform(-2, 2, 6), rng.uniform(-2, 2, 6))
        band = BandSpec(center, delta, DesignRequest(1, 2.0, 1.0))
        clamped = np.asarray(clamp_candidate(spec, band, 512).values)
        x = uniform_grid(512)
        # exact against the band boundaries; against the center up to one rounding
        assert np.all(clamped >= band.lower(x)) and np.all(clamped <= band.upper(x))
        dev = np.abs(clamped - center(x))
        assert np.all(dev <= delta / 2 + 4 * np.finfo(float).eps * (1 + np.abs(center(x))))


class TestVerify:
    def _band(self, delta=math.pi / 8, center=None):
        return BandSpec(center or constant(2.0), delta, DesignRequest(3, 2.0, 0.5))

    def test_zero_distortion(self):
        band = self._band()
        result = verify_candidate(band.center, band)
        assert result.containment and result.budget_ok and result.chain_ok and result.certified
        assert result.achieved_abs_a < 1e-14
        assert result.delta_report.total_variation == 0.0

    def test_equidistant_offset(self):
        center = make_center(TrigPoly(1.0, [0.2, 0.1, 0.5], [0.3]), 3)
        band = BandSpec(center, 0.5, DesignRequest(3, 2.0, 0.5))
        moved = TrigPoly(center.a0 + 0.2, center.cos, center.sin)
        result = verify_candidate(moved, band)
        assert result.delta_report.extrema_count == 0
        assert result.delta_report.total_variation == 0.0
        assert result.certified and result.budget_ok and result.containment
        a, b = trig_spectrum(center, 8), trig_spectrum(moved, 8)
        np.testing.assert_allclose(a.cos, b.cos, atol=1e-10)
        np.testing.assert_allclose(a.sin, b.sin, atol=1e-10)

    def test_worked_example_certifies(self):
        request, widths, band = design_band(WORKED, 3, 2.0)
        assert band.delta == pytest.approx(math.pi / 8)
        candidate = clamp_candidate(WORKED, band)
        result = verify_candidate(candidate, band)
        assert result.certified and result.containment
        assert result.achieved_abs_a <= 0.25 + 1e-8
        assert result.achieved_abs_a == pytest.approx(A3_CLIPPED_PI_OVER_8, abs=1e-6)
        assert result.n_extrema_measured == 6
        assert result.budget_ok and result.chain_ok
        assert result.reduction_factor >= 2.0

    def test_unchanged_function_is_not_certified(self):
        _, _, band = design_band(WORKED, 3, 2.0)
        result = verify_candidate(WORKED, band)
        assert not result.certified
        assert not result.containment
        assert result.reduction_factor == pytest.approx(1.0)

    def test_underestimated_extrema_count_can_fail(self):
        # N = 4 assumed but the clamped difference has 6 extrema
        _, widths, band = design_band(WORKED, 3, 2.0, n_extrema=4)
        assert band.delta == widths.eq11
        result = verify_candidate(clamp_candidate(WORKED, band), band)
        assert result.n_extrema_measured == 6
        assert not result.budget_ok
        assert not result.certified

    def test_center_not_zeroed(self):
        band = BandSpec(WORKED, 0.3, DesignRequest(3, 2.0, 0.5))
        with pytest.raises(CenterNotZeroedError):
            verify_candidate(WORKED, band)

    def test_samples_center_round_trip(self):
        spec = WakeProfile(2.0, [Deficit(1.0, 0.7, 0.15), Deficit(4.0, 0.4, 0.3)])
        request, widths, band = design_band(spec, 2, 3.0)
        assert isinstance(band.center, Samples)
        result = verify_candidate(clamp_candidate(spec, band), band)
        assert result.containment
        assert result.certified


def test_trivial_center_workflow():
    spec = WakeProfile(1.0, [Deficit(0.0, 0.6, 0.4)])
    request, widths, band = design_band(spec, 1, 4.0, center_kind="trivial")
    result = verify_candidate(clamp_candidate(spec, band), band)
    assert result.certified
    assert result.achieved_abs_a <= request.target_amplitude + 1e-8
