import json
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from harmonic_bounds import (
    Deficit,
    DomainError,
    PiecewiseLinear,
    PolyCheb,
    Samples,
    SamplesCheb,
    SizeError,
    SmoothedSquare,
    SpecError,
    TrigPoly,
    WakeProfile,
    constant,
    evaluate,
    parse_spec,
    sample_uniform,
    serialize_spec,
)
from harmonic_bounds.functions import TWO_PI, chebyshev_nodes, uniform_grid

PERIODIC_SPECS = [
    TrigPoly(0.4, [1.0, -0.3, 0.2], [0.5, 0.0, 0.1]),
    Samples(np.sin(uniform_grid(32)) + 0.1 * np.cos(3 * uniform_grid(32))),
    PiecewiseLinear([(0.0, 1.0), (1.0, -2.0), (4.0, 0.5)]),
    SmoothedSquare(2.0, 0.1),
    WakeProfile(2.0, [Deficit(np.pi, 1.0, 0.3), Deficit(0.2, 0.5, 0.4)]),
]
ALL_SPECS = PERIODIC_SPECS + [
    PolyCheb([0.1, -0.5, 0.3, 0.0, 0.2]),
    SamplesCheb(np.cos(3 * np.arccos(chebyshev_nodes(16)))),
]


def trapezoid_oracle(x, amp, eps):
    """Direct piecewise definition of the smoothed square wave."""
    x = x % (2 * math.pi)
    if x < eps:
        return amp * x / eps
    if x <= math.pi - eps:
        return amp
    if x < math.pi + eps:
        return amp * (math.pi - x) / eps
    if x <= 2 * math.pi - eps:
        return -amp
    return amp * (x - 2 * math.pi) / eps


class TestEvaluate:
    def test_cosine_at_zero(self):
        assert evaluate(TrigPoly(0.0, [1.0]), 0.0) == 1.0

    def test_smoothed_square_plateau(self):
        assert evaluate(SmoothedSquare(1.0, 0.01), np.pi / 2) == 1.0

    def test_wake_dip_center(self):
        wake = WakeProfile(2.0, [Deficit(np.pi, 1.0, 0.3)])
        assert evaluate(wake, np.pi) == 1.0

    def test_array_in_array_out(self):
        out = evaluate(TrigPoly(2.0), np.zeros(3))
        assert out.shape == (3,)
        assert np.all(out == 1.0)

    def test_chebyshev_domain(self):
        with pytest.raises(DomainError):
            evaluate(PolyCheb([1.0]), 1.5)
        with pytest.raises(DomainError):
            evaluate(PolyCheb([1.0]), np.array([0.0, -1.0001]))

    def test_non_finite(self):
        with pytest.raises(DomainError):
            evaluate(TrigPoly(1.0), math.nan)

    def test_smoothed_square_matches_piecewise_oracle(self):
        spec = SmoothedSquare(1.5, 0.2)
        for x in np.linspace(-7, 13, 997):
            assert spec(x) == pytest.approx(trapezoid_oracle(x, 1.5, 0.2), abs=1e-12)

    def test_piecewise_linear_wraps(self):
        spec = PiecewiseLinear([(1.0, 0.0), (3.0, 2.0)])
        # halfway along the closing segment from (3, 2) to (1 + 2pi, 0)
        mid = 0.5 * (3.0 + 1.0 + TWO_PI)
        assert spec(mid) == pytest.approx(1.0, abs=1e-14)
        assert spec(0.0) == pytest.approx(spec(TWO_PI - 1e-15), abs=1e-12)

    def test_samples_interpolate_linearly(self):
        spec = Samples([0.0, 1.0, 3.0, 2.0])
        assert spec(TWO_PI / 8) == pytest.approx(0.5)
        assert spec(TWO_PI * 7 / 8) == pytest.approx(1.0)

    def test_samples_cheb_interpolates_polynomial(self):
        poly = PolyCheb([0.2, -0.1, 0.4, 0.3])
        samples = SamplesCheb(poly(chebyshev_nodes(8)))
        x = np.linspace(-1, 1, 101)
        assert np.max(np.abs(samples(x) - poly(x))) < 1e-13

    def test_wake_three_images_suffice(self):
        width = np.pi / 4
        wake = WakeProfile(0.0, [Deficit(0.3, 1.0, width)])
        x = np.linspace(0, TWO_PI, 777)
        offset = np.mod(x - 0.3 + np.pi, TWO_PI) - np.pi
        many = sum(np.exp(-0.5 * ((offset + k * TWO_PI) / width) ** 2) for k in range(-10, 11))
        assert np.max(np.abs(wake(x) + many)) < 1e-12


class TestSampleUniform:
    def test_constant(self):
        assert list(sample_uniform(TrigPoly(2.0), 4)) == [1.0, 1.0, 1.0, 1.0]

    def test_cos_quadrants(self):
        np.testing.assert_allclose(sample_uniform(TrigPoly(0.0, [1.0]), 4), [1, 0, -1, 0], atol=1e-15)

    def test_smoothed_square_extremes(self):
        values = sample_uniform(SmoothedSquare(1.0, 0.01), 4096)
        oracle = [trapezoid_oracle(x, 1.0, 0.01) for x in uniform_grid(4096)]
        assert values.min() == min(oracle) == -1.0
        assert values.max() == max(oracle) == 1.0

    def test_too_small(self):
        with pytest.raises(SizeError):
            sample_uniform(TrigPoly(1.0), 3)

    def test_needs_periodic(self):
        with pytest.raises(DomainError):
            sample_uniform(PolyCheb([1.0]), 8)

    @pytest.mark.parametrize("spec", PERIODIC_SPECS, ids=lambda s: s.kind)
    def test_matches_pointwise_evaluation(self, spec):
        n = 96
        values = sample_uniform(spec, n)
        for i in range(n):
            assert values[i] == evaluate(spec, 2 * np.pi * i / n)

    def test_samples_reproduce_exactly(self):
        raw = np.random.default_rng(3).normal(size=64)
        assert np.array_equal(sample_uniform(Samples(raw), 64), raw)


class TestParse:
    def test_trig_poly(self):
        spec = parse_spec('{"kind":"trig_poly","a0":0,"cos":[0.5],"sin":[]}')
        assert isinstance(spec, TrigPoly)
        assert spec.degree == 1
        assert spec.cos == (0.5,)

    def test_samples_too_short(self):
        with pytest.raises(SizeError):
            parse_spec('{"kind":"samples","values":[1,2]}')

    def test_knots_out_of_order(self):
        with pytest.raises(SpecError, match="strictly increasing"):
            parse_spec('{"kind":"piecewise_linear","knots":[[3,0],[1,1]]}')

    def test_knot_outside_period(self):
        with pytest.raises(SpecError, match=r"knots\[0\]\[0\]"):
            parse_spec('{"kind":"piecewise_linear","knots":[[7,0]]}')

    def test_unknown_field(self):
        with pytest.raises(SpecError, match="unknown field"):
            parse_spec('{"kind":"samples","values":[1,2,3,4],"extra":1}')

    def test_missing_field(self):
        with pytest.raises(SpecError, match="missing field"):
            parse_spec('{"kind":"smoothed_square","amplitude":1}')

    def test_unknown_kind(self):
        with pytest.raises(SpecError, match="kind"):
            parse_spec('{"kind":"sawtooth"}')

    def test_syntax_error_has_position(self):
        with pytest.raises(SpecError, match="line 2"):
            parse_spec('{"kind":"samples",\n "values": [1, 2,, 3]}')

    def test_field_type(self):
        with pytest.raises(SpecError, match=r"cos\[1\]"):
            parse_spec('{"kind":"trig_poly","cos":[1,"x"]}')

    @pytest.mark.parametrize(
        "text",
        [
            '{"kind":"smoothed_square","amplitude":1,"ramp_half_width":0}',
            '{"kind":"smoothed_square","amplitude":-1,"ramp_half_width":0.1}',
            '{"kind":"wake_profile","mean":1,"deficits":[{"center":1,"depth":-1,"width":0.2}]}',
            '{"kind":"wake_profile","mean":1,"deficits":[{"center":1,"depth":1,"width":0}]}',
            '{"kind":"poly_cheb","coeffs":[]}',
        ],
    )
    def test_invariant_violations(self, text):
        with pytest.raises(SpecError):
            parse_spec(text)

    @pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind)
    def test_round_trip(self, spec):
        again = parse_spec(serialize_spec(spec))
        assert again == spec
        x = uniform_grid(1024) if spec.periodic else np.linspace(-1, 1, 1024)
        assert np.array_equal(evaluate(again, x), evaluate(spec, x))

    def test_serialized_form_is_plain_json(self):
        data = json.loads(serialize_spec(WakeProfile(1.0, [Deficit(0.5, 0.2, 0.1)])))
        assert data == {
            "kind": "wake_profile",
            "mean": 1.0,
            "deficits": [{"center": 0.5, "depth": 0.2, "width": 0.1}],
        }


@pytest.mark.parametrize("spec", PERIODIC_SPECS, ids=lambda s: s.kind)
@given(x=st.floats(0.0, TWO_PI, exclude_max=True))
def test_periodicity_is_exact(spec, x):
    shifted = x + TWO_PI
    assume(shifted - TWO_PI == x)
    assert evaluate(spec, x) == evaluate(spec, shifted)


@given(mean=st.floats(-10, 10), x=st.floats(-20, 20))
def test_wake_without_deficits_is_flat(mean, x):
    assert evaluate(WakeProfile(mean, []), x) == mean


def test_constant_helper():
    assert evaluate(constant(3.5), 1.234) == 3.5
