"""Tests for special functions, quadrature, root finding and random streams."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from numerics.quadrature import chebyshev_nodes, integrate_adaptive
from numerics.rng import RngStream
from numerics.roots import find_root_bracketed
from numerics.special import bessel_k0, bessel_k1, scaled_k0, scaled_k1, x_k1
from utils.exceptions import BracketError, DomainError

EULER_GAMMA = 0.5772156649015329


def k0_series(x: float, terms: int = 40) -> float:
    """K0 from its ascending series, valid for small x."""
    total = -(math.log(x / 2.0) + EULER_GAMMA) * sum(
        (x * x / 4.0) ** k / math.factorial(k) ** 2 for k in range(terms)
    )
    harmonic = 0.0
    for k in range(1, terms):
        harmonic += 1.0 / k
        total += (x * x / 4.0) ** k / math.factorial(k) ** 2 * harmonic
    return total


class TestBessel:
    @pytest.mark.parametrize("x, k0, k1", [
        (1.0, 0.4210244382, 0.6019072302),
        (2.0, 0.1138938727, 0.1398658818),
    ])
    def test_reference_values(self, x, k0, k1):
        assert bessel_k0(x) == pytest.approx(k0, abs=1e-10)
        assert bessel_k1(x) == pytest.approx(k1, abs=1e-10)

    @pytest.mark.parametrize("x", [0.01, 0.1, 0.5, 1.0, 2.0])
    def test_k0_matches_series(self, x):
        assert bessel_k0(x) == pytest.approx(k0_series(x), rel=1e-10)

    def test_small_argument_asymptotics(self):
        assert bessel_k0(1e-6) == pytest.approx(-math.log(0.5e-6) - EULER_GAMMA, rel=1e-6)
        assert bessel_k1(1e-6) * 1e-6 == pytest.approx(1.0, rel=1e-6)

    def test_large_argument_underflows_to_zero(self):
        assert bessel_k0(800.0) == 0.0
        assert bessel_k1(800.0) == 0.0
        assert scaled_k0(800.0) == pytest.approx(math.sqrt(math.pi / 1600.0), rel=1e-3)
        assert scaled_k1(800.0) > 0.0

    @pytest.mark.parametrize("x", [0.0, -1.0, float("nan")])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            bessel_k0(x)
        with pytest.raises(DomainError):
            bessel_k1(x)

    def test_arrays_are_supported(self):
        values = bessel_k0(np.array([1.0, 2.0]))
        assert_allclose(values, [0.4210244382, 0.1138938727], atol=1e-10)

    def test_derivative_of_k0_is_minus_k1(self):
        h = 1e-5
        for x in np.linspace(0.5, 10.0, 20):
            derivative = -(bessel_k0(x + h) - bessel_k0(x - h)) / (2.0 * h)
            assert derivative == pytest.approx(bessel_k1(x), abs=1e-6)

    def test_x_k1_limits(self):
        assert x_k1(0.0) == 1.0
        assert x_k1(1000.0) == 0.0
        assert x_k1(1.0) == pytest.approx(0.6019072302, abs=1e-10)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(min_value=0.01, max_value=50.0))
    def test_ordering(self, x):
        assert bessel_k1(x) > bessel_k0(x) > 0.0


class TestChebyshevNodes:
    def test_single_node(self):
        rule = chebyshev_nodes(1)
        assert_allclose(rule.nodes, [0.0], atol=1e-15)
        assert rule.weight == pytest.approx(math.pi)

    def test_two_nodes(self):
        assert_allclose(chebyshev_nodes(2).nodes, [0.70710678, -0.70710678], atol=1e-8)

    def test_nodes_decrease(self):
        nodes = chebyshev_nodes(5).nodes
        assert nodes.size == 5
        assert np.all(np.diff(nodes) < 0)

    def test_exact_for_weighted_polynomials(self):
        rule = chebyshev_nodes(4)
        assert rule.integrate(lambda x: 1.0 / np.sqrt(1.0 - x * x)) == pytest.approx(math.pi, rel=1e-12)
        assert rule.integrate(lambda x: x * x / np.sqrt(1.0 - x * x)) == pytest.approx(math.pi / 2.0, rel=1e-12)

    def test_converges_for_smooth_integrands(self):
        assert chebyshev_nodes(200).integrate(lambda x: np.ones_like(x)) == pytest.approx(2.0, rel=1e-4)

    def test_order_must_be_positive(self):
        with pytest.raises(DomainError):
            chebyshev_nodes(0)


class TestIntegrateAdaptive:
    def test_constant(self):
        assert integrate_adaptive(lambda x: 1.0, 0.0, 1.0, 1e-12) == pytest.approx(1.0, abs=1e-12)

    def test_bessel_identity(self):
        value = integrate_adaptive(lambda u: u * bessel_k0(u), 0.0, 50.0, 1e-10)
        assert value == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("m", [1, 4, 10])
    def test_substituted_identity(self, m):
        lam = 1.0 / m
        upper = (40.0 / (2.0 * lam)) ** 2
        value = integrate_adaptive(lambda x: bessel_k0(2.0 * lam * math.sqrt(x)), 0.0, upper, 1e-8, rel_tol=1e-10)
        assert value == pytest.approx(1.0 / (2.0 * lam * lam), rel=1e-7)

    def test_empty_interval_rejected(self):
        with pytest.raises(DomainError):
            integrate_adaptive(lambda x: x, 1.0, 1.0, 1e-9)


class TestFindRoot:
    def test_linear(self):
        assert find_root_bracketed(lambda x: x - 2.0, 0.0, 5.0, 1e-12) == pytest.approx(2.0, abs=1e-12)

    def test_quadratic(self):
        assert find_root_bracketed(lambda x: x * x - 2.0, 0.0, 2.0, 1e-12) == pytest.approx(1.41421356, abs=1e-8)

    def test_root_on_bracket_end(self):
        assert find_root_bracketed(lambda x: x, 0.0, 1.0, 1e-12) == 0.0

    def test_same_sign_raises(self):
        with pytest.raises(BracketError) as exc_info:
            find_root_bracketed(lambda x: x * x + 1.0, -1.0, 1.0, 1e-12)
        assert exc_info.value.lo == -1.0


class TestRngStream:
    def test_reproducible(self):
        a = RngStream(seed=7, stream_id=3).generator().standard_normal(100)
        b = RngStream(seed=7, stream_id=3).generator().standard_normal(100)
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        a = RngStream(seed=7, stream_id=0).generator().standard_normal(10)
        b = RngStream(seed=7, stream_id=1).generator().standard_normal(10)
        c = RngStream(seed=7).substream(0).generator().standard_normal(10)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_with_stream_drops_path(self):
        stream = RngStream(seed=1, stream_id=2).substream(5)
        assert stream.with_stream(4) == RngStream(seed=1, stream_id=4)

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_seed_range(self, seed):
        with pytest.raises(ValueError):
            RngStream(seed=seed)
