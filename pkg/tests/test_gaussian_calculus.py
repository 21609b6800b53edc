"""Closed-form symbol algebra: evaluation, width map, heat identity, moments.

Expected values marked "frozen" were computed independently (direct scalar
substitution, and adaptive 2-D quadrature for the transform itself) before
being asserted here.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from berezin import (
    ComplexPoint,
    GaussianSymbol,
    QuantParams,
    berezin_transform_closed,
    evaluate,
    gauss_hermite,
    gaussian_moment,
    heat_evolve,
    odd_moment_vanishes,
    scaled,
    taylor_remainder,
    transform_compose,
)

positive = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)


class TestEvaluate:
    def test_zero_compression_is_constant(self):
        g = GaussianSymbol(dim=1, amplitude=1.0, compression=0.0)
        for z in (0j, 1.5 - 2j, -0.3 + 0.9j):
            assert evaluate(g, z) == 1.0

    def test_origin(self):
        g = GaussianSymbol(dim=1, amplitude=1.0, compression=1.0)
        assert evaluate(g, 0j) == 1.0

    def test_frozen_point(self):
        # (2*Re z)^2 = 1 at z = 0.5+0.7i, so the value is exp(-1/4)  [frozen]
        g = GaussianSymbol(dim=1, amplitude=1.0, compression=1.0)
        assert evaluate(g, 0.5 + 0.7j) == pytest.approx(0.7788007830714049, rel=1e-15)

    def test_imaginary_shift_invariance(self):
        g = GaussianSymbol(dim=2, amplitude=2.0, compression=1.5)
        z = ComplexPoint((0.4 + 0.1j, -0.2 + 0.9j))
        shifted = ComplexPoint((0.4 - 3.7j, -0.2 + 0.05j))
        assert evaluate(g, z) == evaluate(g, shifted)

    def test_positive_everywhere(self):
        g = GaussianSymbol(dim=1, amplitude=0.5, compression=3.0)
        for x in np.linspace(-4, 4, 17):
            assert evaluate(g, complex(x, x / 2)) > 0.0

    def test_dimension_mismatch(self):
        g = GaussianSymbol(dim=2, amplitude=1.0, compression=1.0)
        with pytest.raises(ValueError, match="dimension mismatch"):
            evaluate(g, 1.0 + 0j)

    def test_non_finite_coordinates(self):
        with pytest.raises(ValueError, match="non-finite"):
            ComplexPoint((complex("inf"), 0j))
        with pytest.raises(ValueError, match="non-finite"):
            ComplexPoint((complex(0, float("nan")),))

    def test_symbol_validation(self):
        with pytest.raises(ValueError):
            GaussianSymbol(dim=0, amplitude=1.0, compression=0.0)
        with pytest.raises(ValueError):
            GaussianSymbol(dim=1, amplitude=0.0, compression=0.0)
        with pytest.raises(ValueError):
            GaussianSymbol(dim=1, amplitude=1.0, compression=-0.5)
        with pytest.raises(ValueError):
            QuantParams(0.0)


class TestTransformClosed:
    def test_reference_case(self):
        # lam=1, alpha=1 -> amplitude sqrt(1/2), width 1/2  [frozen]
        out = berezin_transform_closed(GaussianSymbol(1, 1.0, 1.0), QuantParams(1.0))
        assert out.amplitude == pytest.approx(0.7071067811865476, rel=1e-15)
        assert out.compression == pytest.approx(0.5, rel=1e-15)

    def test_constant_fixed_point_exact(self):
        out = berezin_transform_closed(GaussianSymbol(1, 1.0, 0.0), QuantParams(3.0))
        assert out.amplitude == 1.0
        assert out.compression == 0.0

    def test_classical_limit_case(self):
        out = berezin_transform_closed(GaussianSymbol(1, 1.0, 1.0), QuantParams(1e4))
        assert out.compression == pytest.approx(0.9999000099990001, rel=1e-14)
        assert out.amplitude == pytest.approx(0.9999500037496876, rel=1e-14)

    @given(lam=positive, alpha=positive)
    @settings(max_examples=200, derandomize=True)
    def test_monotone_contraction(self, lam, alpha):
        out = berezin_transform_closed(GaussianSymbol(1, 1.0, lam), QuantParams(alpha))
        assert 0.0 < out.compression < min(alpha, lam)

    def test_classical_limit_bound(self):
        lam = 1.7
        for k in range(2, 7):
            alpha = 10.0**k
            out = berezin_transform_closed(GaussianSymbol(1, 1.0, lam), QuantParams(alpha))
            assert abs(out.compression - lam) <= lam * lam / alpha
            assert abs(out.amplitude - 1.0) <= lam / alpha

    @given(lam=positive, alpha=positive, factor=positive)
    @settings(max_examples=200, derandomize=True)
    def test_linearity(self, lam, alpha, factor):
        g = GaussianSymbol(1, 1.0, lam)
        q = QuantParams(alpha)
        left = berezin_transform_closed(scaled(g, factor), q)
        right = scaled(berezin_transform_closed(g, q), factor)
        assert left.compression == right.compression
        assert left.amplitude == pytest.approx(right.amplitude, rel=1e-15)


class TestHeatEvolve:
    def test_bitwise_agreement_grid(self):
        for lam in (0.5, 1.0, 2.0):
            for alpha in (0.5, 1.0, 5.0):
                for dim in (1, 2):
                    g = GaussianSymbol(dim, 1.0, lam)
                    q = QuantParams(alpha)
                    a = heat_evolve(g, q)
                    b = berezin_transform_closed(g, q)
                    assert a.amplitude == b.amplitude
                    assert a.compression == b.compression

    def test_constant_unchanged(self):
        g = GaussianSymbol(1, 2.5, 0.0)
        out = heat_evolve(g, QuantParams(7.0))
        assert out == g

    def test_two_dim_case(self):
        # n=2, lam=2, alpha=2: amplitude factor (1/2)^1, width 1  [frozen]
        out = heat_evolve(GaussianSymbol(2, 1.0, 2.0), QuantParams(2.0))
        assert out.amplitude == pytest.approx(0.5, rel=1e-15)
        assert out.compression == pytest.approx(1.0, rel=1e-15)


class TestTaylorRemainder:
    def test_zero_compression(self):
        g = GaussianSymbol(1, 1.0, 0.0)
        for alpha in (1.0, 10.0, 100.0):
            assert taylor_remainder(g, QuantParams(alpha), 0.7 - 0.2j) == 0.0

    def test_quarters_per_doubling(self):
        g = GaussianSymbol(1, 1.0, 1.0)
        remainders = [taylor_remainder(g, QuantParams(a), 0j) for a in (10.0, 20.0, 40.0)]
        for coarse, fine in zip(remainders, remainders[1:]):
            assert coarse / fine == pytest.approx(4.0, rel=0.15)

    def test_frozen_value(self):
        g = GaussianSymbol(1, 1.0, 1.0)
        remainder = taylor_remainder(g, QuantParams(100.0), 0.3 + 0j)
        assert remainder < 1e-3
        assert remainder == pytest.approx(2.216482368599948e-05, rel=1e-9)  # frozen

    def test_amplitude_ignored(self):
        q = QuantParams(25.0)
        small = taylor_remainder(GaussianSymbol(1, 1.0, 1.0), q, 0.4 + 0j)
        large = taylor_remainder(GaussianSymbol(1, 40.0, 1.0), q, 0.4 + 0j)
        assert small == large

    def test_loglog_slope(self):
        g = GaussianSymbol(1, 1.0, 1.0)
        alphas = (10.0, 100.0, 1000.0)
        sups = [
            max(taylor_remainder(g, QuantParams(a), z) for z in (0j, 0.3 + 0j, 0.7 + 0j))
            for a in alphas
        ]
        slope = np.polyfit(np.log(alphas), np.log(sups), 1)[0]
        assert slope == pytest.approx(-2.0, abs=0.1)


class TestTransformCompose:
    def test_two_unit_steps(self):
        out = transform_compose(GaussianSymbol(1, 1.0, 1.0), QuantParams(1.0), QuantParams(1.0))
        assert out.compression == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_zero_compression(self):
        out = transform_compose(GaussianSymbol(1, 1.0, 0.0), QuantParams(2.0), QuantParams(5.0))
        assert out.compression == 0.0
        assert out.amplitude == 1.0

    def test_matches_single_flow_at_summed_time(self):
        # two steps at alpha=2 equal one step at alpha=1 (t = 1/2 + 1/2)  [frozen]
        out = transform_compose(GaussianSymbol(1, 1.0, 2.0), QuantParams(2.0), QuantParams(2.0))
        single = berezin_transform_closed(GaussianSymbol(1, 1.0, 2.0), QuantParams(1.0))
        assert out.compression == pytest.approx(2.0 / 3.0, rel=1e-14)
        assert out.amplitude == pytest.approx(0.5773502691896257, rel=1e-14)
        assert out.compression == pytest.approx(single.compression, rel=1e-14)
        assert out.amplitude == pytest.approx(single.amplitude, rel=1e-14)

    @given(lam=positive, a1=positive, a2=positive)
    @settings(max_examples=200, derandomize=True)
    def test_reciprocal_additivity(self, lam, a1, a2):
        out = transform_compose(GaussianSymbol(1, 1.0, lam), QuantParams(a1), QuantParams(a2))
        assert 1.0 / out.compression == pytest.approx(1.0 / lam + 1.0 / a1 + 1.0 / a2, rel=1e-12)


class TestGaussianMoment:
    def test_normalization(self):
        assert gaussian_moment(0, 2.0) == pytest.approx(1.2533141373155001, rel=1e-15)

    def test_second_moment(self):
        assert gaussian_moment(2, 1.0) == pytest.approx(0.8862269254527579, rel=1e-15)

    def test_fourth_moment(self):
        assert gaussian_moment(4, 1.0) == pytest.approx(1.329340388179137, rel=1e-15)

    def test_odd_rejected(self):
        with pytest.raises(ValueError, match="odd"):
            gaussian_moment(3, 1.0)
        assert odd_moment_vanishes(3)
        assert not odd_moment_vanishes(4)

    def test_bad_scale(self):
        with pytest.raises(ValueError):
            gaussian_moment(2, 0.0)
        with pytest.raises(ValueError):
            gaussian_moment(2, -1.0)

    def test_matches_quadrature(self):
        rule = gauss_hermite(40)
        for a in (0.5, 1.0, 2.0):
            for k in range(0, 12, 2):
                numeric = float(np.sum(rule.weights * (rule.nodes / math.sqrt(a)) ** k)) / math.sqrt(a)
                assert numeric == pytest.approx(gaussian_moment(k, a), rel=1e-12)
