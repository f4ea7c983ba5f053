import json
import math

import numpy as np
import pytest

from opuckit.measures import (
    MeasureSpec,
    MomentPositivityError,
    WeightPositivityError,
    bernstein_szego_weight,
    szego_functional,
    szego_functional_taylor,
    szego_recursion_polynomials,
    theta_grid,
    trig_moments,
    verblunsky_from_moments,
)
from opuckit.sequences import VerblunskySequence


class TestRecursion:
    def test_empty_prefix(self):
        assert szego_recursion_polynomials([], 1j) == (1, 1)

    def test_single_real_step(self):
        a = 0.4
        for theta in (0.0, 0.7, 2.0):
            z = complex(math.cos(theta), math.sin(theta))
            phi, phistar = szego_recursion_polynomials([a], z)
            assert phi == pytest.approx(z - a)
            assert phistar == pytest.approx(1 - a * z)

    def test_hand_unrolled_two_steps(self):
        # oracle: unrolled by hand at z = 1 for prefix [0.3, 0.2i]
        phi, phistar = szego_recursion_polynomials([0.3, 0.2j], 1.0)
        assert phi == pytest.approx(0.7 + 0.14j)
        assert phistar == pytest.approx(0.7 - 0.14j)

    def test_rejects_off_circle(self):
        with pytest.raises(ValueError):
            szego_recursion_polynomials([0.3], 1.0 + 1e-6)


class TestWeight:
    def test_lebesgue(self):
        w = bernstein_szego_weight([], 64)
        assert np.allclose(w, 1.0)

    def test_closed_form_single_coefficient(self):
        G = 4096
        w = bernstein_szego_weight([0.5], G)
        theta = theta_grid(G)
        closed = 0.75 / np.abs(np.exp(1j * theta) - 0.5) ** 2
        assert np.max(np.abs(w - closed)) <= 1e-12
        # mass is a probability: trapezoid of the closed form
        assert abs(float(np.mean(w)) - 1.0) <= 1e-10

    def test_log_mass_szego_identity(self):
        w = bernstein_szego_weight([0.5], 4096)
        assert float(np.mean(np.log(w))) == pytest.approx(math.log(0.75), abs=1e-8)

    def test_mass_normalization_various(self):
        for prefix in ([0.3], [0.5, -0.2j], [0.1, 0.2, 0.3, -0.4j]):
            w = bernstein_szego_weight(prefix, 4096)
            assert abs(float(np.mean(w)) - 1.0) <= 5e-9

    def test_pointwise_lower_bound(self):
        prefix = [0.6, -0.3 + 0.2j, 0.5j]
        w = bernstein_szego_weight(prefix, 1024)
        num = np.prod([1 - abs(a) ** 2 for a in prefix])
        den = np.prod([(1 + abs(a)) ** 2 for a in prefix])
        assert np.min(w) >= num / den - 1e-12

    def test_grid_floor(self):
        with pytest.raises(ValueError):
            bernstein_szego_weight([0.1], 8)

    def test_underflow_signalled(self):
        prefix = VerblunskySequence((0.9,) * 1600)
        with pytest.raises(WeightPositivityError):
            bernstein_szego_weight(prefix, 64)


class TestMoments:
    def test_lebesgue_recovers_zero(self):
        mom = [1.0, 0.0, 0.0, 0.0]
        rec = verblunsky_from_moments(mom)
        assert all(v == 0 for v in rec.values)

    def test_single_round_trip(self):
        mom = trig_moments(MeasureSpec.bernstein_szego([0.5]), 1, 4096)
        rec = verblunsky_from_moments(mom)
        assert abs(rec.values[0] - 0.5) <= 1e-8

    def test_random_round_trip(self):
        rng = np.random.default_rng(3)
        prefix = VerblunskySequence(
            tuple(
                0.8 * math.sqrt(u) * complex(math.cos(t), math.sin(t))
                for u, t in zip(rng.uniform(size=4), rng.uniform(0, 2 * np.pi, 4))
            )
        )
        mom = trig_moments(MeasureSpec.bernstein_szego(prefix), 4, 8192)
        rec = verblunsky_from_moments(mom)
        assert max(abs(a - b) for a, b in zip(prefix.values, rec.values)) <= 1e-7

    def test_positivity_failure_carries_index(self):
        # c_1 = 1 forces |alpha_0| = 1
        with pytest.raises(MomentPositivityError) as info:
            verblunsky_from_moments([1.0, 1.0, 1.0])
        assert info.value.index == 0

    def test_c0_validated(self):
        with pytest.raises(ValueError):
            verblunsky_from_moments([2.0, 0.0])


class TestFunctional:
    def test_lebesgue_zero(self):
        for m in (0, 1, 3):
            val = szego_functional(MeasureSpec.bernstein_szego([]), m, 256).value
            assert abs(val) <= 1e-15

    def test_classical_szego_value(self):
        val = szego_functional(MeasureSpec.bernstein_szego([0.5]), 0, 4096).value
        assert val == pytest.approx(-math.log(0.75), abs=1e-8)
        assert val == pytest.approx(0.287682, abs=1e-6)

    def test_grid_refinement_consistency(self):
        spec = MeasureSpec.bernstein_szego([0.5])
        v1 = szego_functional(spec, 1, 2048).value
        v2 = szego_functional(spec, 1, 4096).value
        assert abs(v1 - v2) <= 1e-6

    def test_grid_invariance_smooth(self):
        prefix = [0.9, -0.5j, 0.3 + 0.4j]
        spec = MeasureSpec.bernstein_szego(prefix)
        for m in (1, 2):
            v1 = szego_functional(spec, m, 2048).value
            v2 = szego_functional(spec, m, 4096).value
            assert abs(v1 - v2) <= 1e-6

    def test_series_oracle(self):
        prefix = VerblunskySequence((0.4, 0.2 - 0.3j, -0.1j, 0.25, 0.6))
        spec = MeasureSpec.bernstein_szego(prefix)
        for m in (0, 1, 2, 3, 4):
            quad = szego_functional(spec, m, 8192).value
            series = szego_functional_taylor(prefix, m)
            assert quad == pytest.approx(series, abs=1e-10)

    def test_series_oracle_long_prefix(self):
        # cross-validates the grid kernel against the coefficient recursion
        # on a sweep-sized decaying prefix
        prefix = VerblunskySequence(tuple(0.7 / (n + 1) ** 0.6 for n in range(300)))
        spec = MeasureSpec.bernstein_szego(prefix)
        for m in (1, 2, 3):
            quad = szego_functional(spec, m, 8192).value
            series = szego_functional_taylor(prefix, m)
            assert quad == pytest.approx(series, abs=1e-8)

    def test_sampled_kind(self):
        G = 512
        w = 1.0 + 0.5 * np.cos(theta_grid(G))
        val = szego_functional(MeasureSpec.sampled(w), 1, G).value
        # oracle: direct mean on the same grid
        direct = float(np.mean((1 - np.cos(theta_grid(G))) * np.log(1 / w)))
        assert val == pytest.approx(direct, abs=1e-15)

    def test_subunit_weight_gives_nonnegative_value(self):
        # w <= 1 everywhere makes every sample of the integrand nonnegative,
        # so the trapezoid value cannot dip below zero at all
        G = 256
        w = 0.2 + 0.5 * (1 + np.cos(theta_grid(G))) / 2
        for m in (0, 1, 3):
            assert szego_functional(MeasureSpec.sampled(w), m, G).value >= 0.0

    def test_sampled_rejects_nonpositive(self):
        with pytest.raises(WeightPositivityError):
            MeasureSpec.sampled([1.0, 0.0, 1.0])

    def test_divergent_prefix_stays_finite(self):
        # the weight itself underflows here; the functional must not
        prefix = VerblunskySequence(tuple([0.9] * 1600))
        val = szego_functional(MeasureSpec.bernstein_szego(prefix), 1, 256).value
        assert math.isfinite(val) and val > 100


class TestMeasureSpecJson:
    def test_bernstein_szego_round_trip(self):
        spec = MeasureSpec.bernstein_szego([0.1 + 0.2j, -0.3])
        again = MeasureSpec.from_json(spec.to_json())
        assert again.prefix.values == spec.prefix.values
        obj = json.loads(spec.to_json())
        assert obj == {"kind": "bernstein_szego", "alphas": [[0.1, 0.2], [-0.3, 0.0]]}

    def test_sampled_round_trip(self):
        spec = MeasureSpec.sampled([1.0, 2.0, 0.5, 0.5])
        again = MeasureSpec.from_json(spec.to_json())
        assert again.weights == spec.weights
        assert json.loads(spec.to_json())["grid"] == 4

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            MeasureSpec.from_json('{"kind": "mystery"}')
