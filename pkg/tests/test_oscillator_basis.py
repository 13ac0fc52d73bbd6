import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_hermite, gammaln

from covosc import config, oscillator_basis as ob
from covosc.errors import ConfigError, DomainError, QuadratureError


def test_hermite_matches_scipy():
    x = np.linspace(-3.0, 3.0, 13)
    for n in range(12):
        np.testing.assert_allclose(ob.hermite(n, x), eval_hermite(n, x), rtol=1e-12)


def test_hermite_scalar_returns_float():
    assert ob.hermite(3, 0.5) == pytest.approx(8 * 0.125 - 12 * 0.5)
    assert isinstance(ob.hermite(3, 0.5), float)


def test_phi_at_origin():
    # phi_0(0) = pi^{-1/4}; phi_1 is odd
    assert ob.phi(0, 0.0) == pytest.approx(math.pi**-0.25, rel=1e-15)
    assert ob.phi(1, 0.0) == 0.0


def test_phi_table_agrees_with_direct_evaluation():
    x = np.linspace(-6.0, 6.0, 25)
    table = ob.phi_table(20, x)
    for n in range(21):
        np.testing.assert_allclose(table[n], ob.phi(n, x), rtol=1e-10, atol=1e-14)


def test_phi_high_order_is_finite_and_normalized():
    rule = ob.gauss_hermite(160)
    values = ob.phi_table(100, rule.nodes)
    assert np.all(np.isfinite(values))
    norm = ob.integrate_1d(lambda x: ob.phi(100, x) ** 2, rule)
    assert norm == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("bad", [-1, 1.5, True])
def test_negative_or_non_integer_index_rejected(bad):
    with pytest.raises(DomainError):
        ob.phi(bad, 0.0)


def test_orthonormality_up_to_twenty():
    for m in range(21):
        for n in range(21):
            expected = 1.0 if m == n else 0.0
            assert abs(ob.overlap_1d(m, n) - expected) <= 1e-10


def test_gauss_hermite_rule():
    rule = ob.gauss_hermite(5)
    assert rule.order == 5
    assert rule.nodes[2] == 0.0
    assert np.sum(rule.weights) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert ob.gauss_hermite(5) is rule
    with pytest.raises(ValueError):
        rule.nodes[0] = 1.0


def test_gauss_hermite_order_zero_rejected():
    with pytest.raises(DomainError):
        ob.gauss_hermite(0)


def test_integrate_1d_gaussian_moments():
    # integral of x^2 e^{-x^2/s^2} is sqrt(pi) s^3 / 2
    s = 2.5
    value = ob.integrate_1d(lambda x: x**2 * np.exp(-((x / s) ** 2)), scale=s)
    assert value == pytest.approx(math.sqrt(math.pi) * s**3 / 2, rel=1e-13)


def test_integrate_2d_light_cone_gaussian():
    # exp(-(e^{-2a} u^2 + e^{2a} v^2)) integrates to pi
    a = 1.2
    scales = ob.light_cone_scales(a, a)

    def field(z, t):
        u, v = (z + t) / ob.SQRT2, (z - t) / ob.SQRT2
        return np.exp(-(math.exp(-2 * a) * u**2 + math.exp(2 * a) * v**2))

    assert ob.integrate_2d(field, scales=scales, light_cone=True) == pytest.approx(
        math.pi, rel=1e-13
    )


def test_non_finite_integrand_reports_node():
    with pytest.raises(QuadratureError) as info:
        ob.integrate_1d(lambda x: np.where(x > 0, np.inf, 0.0), ob.gauss_hermite(4))
    assert info.value.node[0] > 0


def test_quadrature_order_from_environment(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv(config.QUADRATURE_ORDER_ENV, "80")
    assert config.quadrature_order() == 80
    monkeypatch.setenv(config.QUADRATURE_ORDER_ENV, "zero")
    with pytest.raises(ConfigError) as info:
        config.quadrature_order()
    assert info.value.field == config.QUADRATURE_ORDER_ENV
    monkeypatch.delenv(config.QUADRATURE_ORDER_ENV)
    assert config.quadrature_order() == config.DEFAULT_QUADRATURE_ORDER


def test_log_binomial_and_binomial():
    assert ob.binomial(10, 3) == 120.0
    assert ob.log_binomial(50, 25) == pytest.approx(math.log(math.comb(50, 25)), rel=1e-13)
    assert ob.log_factorial(0) == 0.0
    with pytest.raises(DomainError):
        ob.log_binomial(3, 4)


def test_sampled_field_simpson_and_second_derivative():
    field = ob.SampledField2D.from_function(
        lambda z, t: np.exp(-(z**2) - t**2), (-6.0, 6.0), (-6.0, 6.0), 481, 481
    )
    assert field.integrate() == pytest.approx(math.pi, rel=1e-8)
    zz, _ = field.mesh()
    exact = (4 * zz**2 - 2) * field.values
    error = field.interior(field.second_derivative(0) - exact)
    assert np.max(np.abs(error)) < 1e-5


def test_sampled_field_rejects_bad_bounds():
    with pytest.raises(DomainError):
        ob.SampledField2D(np.zeros((3, 3)), 1.0, 0.0, 0.0, 1.0)


@settings(max_examples=50, deadline=None)
@given(x=st.floats(-8.0, 8.0), n=st.integers(1, 30))
def test_recurrence_identity(x, n):
    # x phi_n = sqrt((n+1)/2) phi_{n+1} + sqrt(n/2) phi_{n-1}
    table = ob.phi_table(n + 1, x)
    lhs = x * table[n]
    rhs = math.sqrt((n + 1) / 2) * table[n + 1] + math.sqrt(n / 2) * table[n - 1]
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_gauss_hermite_low_orders():
    one = ob.gauss_hermite(1)
    np.testing.assert_array_equal(one.nodes, [0.0])
    np.testing.assert_allclose(one.weights, [math.sqrt(math.pi)], rtol=1e-15)
    two = ob.gauss_hermite(2)
    np.testing.assert_allclose(two.nodes, [-1 / math.sqrt(2), 1 / math.sqrt(2)], rtol=1e-15)
    np.testing.assert_allclose(two.weights, [math.sqrt(math.pi) / 2] * 2, rtol=1e-15)


def test_gauss_hermite_fourth_moment():
    rule = ob.gauss_hermite(40)
    fourth = float(np.dot(rule.weights, rule.nodes**4))
    assert fourth == pytest.approx(3 * math.sqrt(math.pi) / 4, rel=1e-14)


@pytest.mark.parametrize("n", range(1, 11))
def test_hermite_derivative_identity(n):
    x = np.linspace(-2.0, 2.0, 9)
    h = 1e-3
    # five-point central difference
    derivative = (
        -ob.hermite(n, x + 2 * h)
        + 8 * ob.hermite(n, x + h)
        - 8 * ob.hermite(n, x - h)
        + ob.hermite(n, x - 2 * h)
    ) / (12 * h)
    expected = 2 * n * ob.hermite(n - 1, x)
    np.testing.assert_allclose(derivative, expected, rtol=1e-8, atol=1e-8 * np.max(np.abs(expected)))


@pytest.mark.parametrize("n", range(0, 41, 2))
def test_phi_normalization_for_even_orders(n):
    # phi_n(0) = (-1)^{n/2} sqrt(n!) / ((n/2)! 2^{n/2} pi^{1/4})
    log_value = 0.5 * gammaln(n + 1) - gammaln(n // 2 + 1) - 0.5 * n * math.log(2) - 0.25 * math.log(math.pi)
    expected = (-1) ** (n // 2) * math.exp(log_value)
    assert ob.phi(n, 0.0) == pytest.approx(expected, rel=1e-12)
    norm = ob.integrate_1d(lambda x: ob.phi(n, x) ** 2, ob.gauss_hermite(64))
    assert norm == pytest.approx(1.0, abs=1e-12)
