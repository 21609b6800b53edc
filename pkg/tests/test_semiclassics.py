"""Star product, bidifferential terms, bracket condition, expansion check."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from berezin import (
    BRACKET_NORMALIZATION,
    GaussianSymbol,
    PolynomialSymbol,
    QuantParams,
    c_term,
    expansion_check,
    poisson_bracket,
    quantization_condition_residual,
    wick_star,
)
from berezin.verify import _random_polynomial

Z = PolynomialSymbol.coordinate(1)
ZBAR = PolynomialSymbol.conj_coordinate(1)
ONE = PolynomialSymbol.constant(1, 1.0)


def coeffs_close(p, q, tol=1e-12):
    return (p - q).max_coeff() <= tol


@st.composite
def polynomials(draw, dim=1, degree=2):
    seed = draw(st.integers(min_value=0, max_value=2**31))
    rng = np.random.default_rng(seed)
    return _random_polynomial(rng, dim, degree=degree, terms=3)


class TestPolynomialSymbol:
    def test_canonicalization_drops_zeros_and_sorts(self):
        p = PolynomialSymbol(1, (((2,), (0,), 1.0), ((0,), (1,), 0.0), ((1,), (0,), 2.0)))
        assert p.terms == (((1,), (0,), 2.0 + 0j), ((2,), (0,), 1.0 + 0j))

    def test_index_validation(self):
        with pytest.raises(ValueError, match="length"):
            PolynomialSymbol(2, (((1,), (0, 0), 1.0),))
        with pytest.raises(ValueError, match="non-negative"):
            PolynomialSymbol(1, (((-1,), (0,), 1.0),))

    def test_degrees(self):
        p = Z * Z * ZBAR + ZBAR
        assert p.degree == 3
        assert p.degree_z == 2
        assert p.degree_zbar == 1

    def test_arithmetic(self):
        p = 2.0 * Z + ZBAR - Z
        assert p.terms_dict() == {((1,), (0,)): 1.0 + 0j, ((0,), (1,)): 1.0 + 0j}
        assert (p - p).is_zero

    def test_derivatives(self):
        p = Z * Z * ZBAR
        assert p.deriv_z(0).terms_dict() == {((1,), (1,)): 2.0 + 0j}
        assert p.deriv_zbar(0).terms_dict() == {((2,), (0,)): 1.0 + 0j}
        assert ONE.deriv_z(0).is_zero

    def test_eval_point(self):
        p = Z * ZBAR  # |z|^2
        assert p.eval_point(0.3 + 0.4j) == pytest.approx(0.25, rel=1e-15)

    def test_eval_many_matches_eval_point(self):
        p = Z * Z + 2.0 * ZBAR
        grid = np.array([0.1 + 0.2j, -0.4 + 0.5j, 1.0 - 1.0j])
        values = p.eval_many((grid,))
        for point, value in zip(grid, values):
            assert value == pytest.approx(p.eval_point(complex(point)), rel=1e-14)

    def test_json_round_trip_sorted(self):
        p = Z * Z + (1 + 2j) * ZBAR * Z
        data = p.to_json_dict()
        assert set(data) == {"dim", "terms"}
        assert all(set(t) == {"beta", "gamma", "re", "im"} for t in data["terms"])
        keys = [(tuple(t["beta"]), tuple(t["gamma"])) for t in data["terms"]]
        assert keys == sorted(keys)
        assert PolynomialSymbol.from_json_dict(json.loads(json.dumps(data))) == p


class TestWickStar:
    def test_z_star_zbar(self):
        out = wick_star(Z, ZBAR, QuantParams(1.0))
        assert out == Z * ZBAR + ONE

    def test_zbar_star_z_has_no_correction(self):
        assert wick_star(ZBAR, Z, QuantParams(1.0)) == Z * ZBAR

    def test_number_symbol_squared(self):
        n_sym = Z * ZBAR
        out = wick_star(n_sym, n_sym, QuantParams(2.0))
        expected = Z * Z * ZBAR * ZBAR + 0.5 * (Z * ZBAR)
        assert out == expected

    def test_unit_two_sided(self):
        q = QuantParams(1.7)
        for p in (Z, ZBAR, Z * Z * ZBAR + 3.0 * ONE):
            assert wick_star(ONE, p, q) == p
            assert wick_star(p, ONE, q) == p

    def test_commutator_is_inverse_alpha(self):
        for alpha in (1.0, 2.0, 3.0):
            q = QuantParams(alpha)
            commutator = wick_star(Z, ZBAR, q) - wick_star(ZBAR, Z, q)
            assert commutator == PolynomialSymbol.constant(1, 1.0 / alpha)

    def test_c_term_sum_reconstructs_star(self):
        rng = np.random.default_rng(21)
        q = QuantParams(1.3)
        for _ in range(10):
            f = _random_polynomial(rng, 2, degree=3)
            g = _random_polynomial(rng, 2, degree=3)
            total = PolynomialSymbol(2, ())
            for j in range(f.degree_z + 1):
                total = total + c_term(f, g, j).scaled((1.0 / q.alpha) ** j)
            assert coeffs_close(total, wick_star(f, g, q), tol=1e-13)

    @given(data=polynomials(dim=1, degree=3), other=polynomials(dim=1, degree=3))
    @settings(max_examples=50, derandomize=True)
    def test_truncation_at_zero_is_product(self, data, other):
        assert c_term(data, other, 0) == data * other

    def test_associativity_seeded(self):
        rng = np.random.default_rng(5)
        q = QuantParams(1.7)
        worst = 0.0
        for _ in range(25):
            dim = int(rng.integers(1, 3))
            f = _random_polynomial(rng, dim, degree=3)
            g = _random_polynomial(rng, dim, degree=3)
            h = _random_polynomial(rng, dim, degree=3)
            left = wick_star(wick_star(f, g, q), h, q)
            right = wick_star(f, wick_star(g, h, q), q)
            worst = max(worst, (left - right).max_coeff())
        assert worst <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            wick_star(Z, PolynomialSymbol.coordinate(2), QuantParams(1.0))


class TestCTerm:
    def test_order_one_pair(self):
        assert c_term(Z, ZBAR, 1) == ONE

    def test_order_two_squares(self):
        out = c_term(Z * Z, ZBAR * ZBAR, 2)
        assert out == PolynomialSymbol.constant(1, 2.0)

    def test_two_dim_mixed(self):
        z1, z2 = PolynomialSymbol.coordinate(2, 0), PolynomialSymbol.coordinate(2, 1)
        zb1, zb2 = PolynomialSymbol.conj_coordinate(2, 0), PolynomialSymbol.conj_coordinate(2, 1)
        out = c_term(z1 * z2, zb1 * zb2, 2)
        assert out == PolynomialSymbol.constant(2, 1.0)


class TestPoissonBracket:
    def test_coordinate_pair(self):
        bracket = poisson_bracket(Z, ZBAR)
        assert bracket == PolynomialSymbol.constant(1, -2j * math.pi)

    def test_antisymmetry_and_self(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            f = _random_polynomial(rng, 1, degree=3)
            g = _random_polynomial(rng, 1, degree=3)
            assert poisson_bracket(f, f).is_zero
            assert coeffs_close(poisson_bracket(f, g) + poisson_bracket(g, f), PolynomialSymbol(1, ()), 1e-13)

    def test_quadratic_case(self):
        bracket = poisson_bracket(Z * Z, ZBAR)
        assert bracket == (-4j * math.pi) * Z

    def test_conventional_scale(self):
        bracket = poisson_bracket(Z, ZBAR, scale=1j)
        assert bracket == PolynomialSymbol.constant(1, 1j)
        assert BRACKET_NORMALIZATION == -2j * math.pi


class TestQuantizationCondition:
    def test_coordinate_pair(self):
        assert quantization_condition_residual(Z, ZBAR) <= 1e-15

    def test_self_pair(self):
        p = Z * Z * ZBAR + 2.0 * Z
        assert quantization_condition_residual(p, p) <= 1e-15

    def test_hundred_seeded_pairs(self):
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(100):
            dim = int(rng.integers(1, 3))
            f = _random_polynomial(rng, dim, degree=3)
            g = _random_polynomial(rng, dim, degree=3)
            worst = max(worst, quantization_condition_residual(f, g))
        assert worst <= 1e-14


class TestExpansionCheck:
    def test_constant_symbol_vanishes(self):
        report = expansion_check(GaussianSymbol(1, 1.0, 0.0), (10.0, 100.0, 1000.0), (0j, 0.3 + 0j))
        assert report.residual_norms == (0.0, 0.0, 0.0)
        assert report.fitted_slope is None

    def test_slope_minus_one(self):
        report = expansion_check(
            GaussianSymbol(1, 1.0, 1.0), (10.0, 100.0, 1000.0), (0j, 0.3 + 0j, 0.7 + 0j)
        )
        assert report.fitted_slope == pytest.approx(-1.0, abs=0.1)

    def test_pointwise_convergence_envelope(self):
        # |transform(g) - g| -> 0 at rate lam*(lam*u2_max/4 + n/2)/alpha on the grid
        from berezin import QuantParams, berezin_transform_closed, evaluate

        g = GaussianSymbol(1, 1.0, 1.0)
        grid = (0j, 0.3 + 0j, 0.7 + 0j)
        lam, n = 1.0, 1
        u2_max = max(4.0 * z.real**2 for z in grid)
        envelope_scale = lam * (lam * u2_max / 4.0 + n / 2.0)
        for alpha in (10.0, 100.0, 1000.0):
            transformed = berezin_transform_closed(g, QuantParams(alpha))
            deviation = max(abs(evaluate(transformed, z) - evaluate(g, z)) for z in grid)
            assert deviation <= envelope_scale / alpha * 1.05

    def test_needs_three_alphas(self):
        with pytest.raises(ValueError, match="three"):
            expansion_check(GaussianSymbol(1, 1.0, 1.0), (10.0, 100.0), (0j,))

    def test_needs_increasing_alphas(self):
        with pytest.raises(ValueError, match="increasing"):
            expansion_check(GaussianSymbol(1, 1.0, 1.0), (10.0, 10.0, 100.0), (0j,))

    def test_needs_points(self):
        with pytest.raises(ValueError, match="at least one point"):
            expansion_check(GaussianSymbol(1, 1.0, 1.0), (10.0, 100.0, 1000.0), ())
