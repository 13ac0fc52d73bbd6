import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import nbinom

from covosc import entanglement_thermo as et
from covosc.covariant_boost import Rapidity
from covosc.errors import DomainError, TruncationWarning
from covosc.oscillator_basis import integrate_1d

ETAS = (0.25, 0.5, 1.0, 2.0)


@pytest.mark.parametrize("n", [0, 1, 3])
@pytest.mark.parametrize("eta", [0.5, 1.0, 2.0])
def test_spectrum_is_negative_binomial(n, eta):
    density = et.SpectralDensity(n, Rapidity(eta))
    p = density.eigenvalues(40)
    expected = nbinom.pmf(np.arange(40), n + 1, 1 - math.tanh(eta) ** 2)
    np.testing.assert_allclose(p, expected, rtol=1e-10)


def test_spectrum_iterates_lazily():
    density = et.SpectralDensity(1, Rapidity(1.0))
    first = [p for _, p in zip(range(5), density)]
    np.testing.assert_allclose(first, density.eigenvalues(5), rtol=1e-14)


@pytest.mark.parametrize("n", [0, 2])
@pytest.mark.parametrize("eta", [0.3, 1.0, 3.0])
def test_truncation_meets_tail_bound(n, eta):
    density = et.SpectralDensity(n, Rapidity(eta))
    terms = density.truncation_order()
    assert density.tail_bound(terms) < 1e-14
    assert abs(1 - density.eigenvalues(terms).sum()) < 1e-12


def test_spectrum_at_rest_is_pure():
    density = et.SpectralDensity(2, Rapidity(0.0))
    assert density.truncation_order() == 1
    assert list(density.eigenvalues(3)) == [1.0, 0.0, 0.0]


def test_mean_excitation_matches_spectrum():
    n, eta = 2, 0.9
    density = et.SpectralDensity(n, Rapidity(eta))
    terms = density.truncation_order()
    mean = float(np.sum(np.arange(terms) * density.eigenvalues(terms)))
    assert mean == pytest.approx(et.mean_excitation(n, eta), rel=1e-10)


def test_expansion_coefficients_match_projections():
    for n in range(3):
        for k in range(9):
            for eta in (0.5, 1.0, 1.5):
                projection = et.expansion_projection(n, k, eta)
                assert abs(projection - et.expansion_coefficient(n, k, eta)) <= 1e-8


def test_printed_time_index_fails_projection():
    n, k, eta = 1, 3, 1.0
    printed = et.expansion_projection(n, k, eta, time_index="n")
    assert abs(printed - et.expansion_coefficient(n, k, eta)) > 1e-3
    with pytest.raises(DomainError):
        et.expansion_projection(n, k, eta, time_index="t")


def test_expansion_coefficient_sign_for_negative_rapidity():
    assert et.expansion_coefficient(0, 1, -0.5) == pytest.approx(-et.expansion_coefficient(0, 1, 0.5))
    assert et.expansion_coefficient(0, 2, -0.5) == pytest.approx(et.expansion_coefficient(0, 2, 0.5))
    assert et.expansion_coefficient(2, 0, 0.0) == 1.0
    assert et.expansion_coefficient(2, 1, 0.0) == 0.0


@pytest.mark.parametrize("eta", [0.5, 1.0, 2.0])
def test_ground_state_kernel_closed_form(eta):
    z = np.linspace(-4, 4, 21)
    zz, zz2 = np.meshgrid(z, z, indexing="ij")
    np.testing.assert_allclose(
        et.reduced_density(0, eta, zz, zz2), et.density_kernel_closed_form(eta, zz, zz2), atol=1e-12
    )


@pytest.mark.parametrize("n", [0, 1, 2])
def test_reduced_trace_is_one(n):
    for eta in (0.5, 1.0, 2.0):
        assert et.reduced_trace_oracle(n, eta) == pytest.approx(1.0, abs=1e-8)


def test_short_truncation_warns(caplog: pytest.LogCaptureFixture):
    with pytest.warns(TruncationWarning):
        et.reduced_density(0, 1.0, 0.0, 0.0, terms=3)
    assert "truncated" in caplog.text


def test_default_truncation_does_not_warn():
    with warnings.catch_warnings():
        warnings.simplefilter("error", TruncationWarning)
        et.reduced_density(1, 1.5, 0.3, -0.2)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_entropy_closed_form_matches_spectrum(n):
    for eta in ETAS:
        assert et.entropy_analytic(n, eta) == pytest.approx(et.entropy_oracle(n, eta), abs=1e-9)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_entropy_zero_at_rest_and_increasing(n):
    assert et.entropy_analytic(n, 0.0) == 0.0
    assert et.entropy_oracle(n, 0.0) == 0.0
    values = [et.entropy_analytic(n, eta) for eta in (0.0, *ETAS)]
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_entropy_speed_form(n):
    for eta in ETAS:
        beta = math.tanh(eta)
        assert et.entropy_velocity_form(n, beta) == pytest.approx(et.entropy_analytic(n, eta), abs=1e-9)
    with pytest.raises(DomainError):
        et.entropy_velocity_form(n, 1.0)


def test_purity():
    assert et.purity(0, 0.0) == 1.0
    for eta in (0.5, 1.0, 2.0):
        expected = 1 / math.cosh(2 * eta)
        assert et.purity(0, eta) == pytest.approx(expected, abs=1e-8)
        assert et.purity_oracle(0, eta) == pytest.approx(expected, abs=1e-8)
        assert et.purity(1, eta) < 1.0


def test_purity_oracle_excited_state():
    assert et.purity_oracle(1, 0.7) == pytest.approx(et.purity(1, 0.7), abs=1e-8)


@settings(max_examples=50, deadline=None)
@given(eta=st.floats(0.01, 4.0))
def test_temperature_round_trip(eta):
    T = et.temperature_of(eta)
    assert math.tanh(eta) ** 2 == pytest.approx(math.exp(-1 / T.value), abs=1e-12)
    assert math.tanh(et.rapidity_of(T).eta) ** 2 == pytest.approx(math.tanh(eta) ** 2, abs=1e-12)


def test_temperature_at_rest_is_zero():
    assert et.temperature_of(0.0) is et.Temperature.ZERO
    assert et.rapidity_of(et.Temperature.ZERO).eta == 0.0
    # tanh^2 eta = e^{-1} is exactly T = 1
    eta = math.atanh(math.exp(-0.5))
    assert et.temperature_of(eta).value == pytest.approx(1.0, rel=1e-13)
    with pytest.raises(DomainError):
        et.Temperature(-0.1)


@pytest.mark.parametrize("eta", [0.5, 1.0, 2.0])
def test_thermal_density_equals_reduced_density(eta):
    z = np.linspace(-4, 4, 41)
    zz, zz2 = np.meshgrid(z, z, indexing="ij")
    thermal = et.thermal_density(et.temperature_of(eta), zz, zz2)
    assert np.max(np.abs(thermal - et.reduced_density(0, eta, zz, zz2))) <= 1e-9


def test_thermal_density_at_zero_temperature_is_ground_state():
    assert et.thermal_density(0.0, 0.4, 0.4) == pytest.approx(math.exp(-0.16) / math.sqrt(math.pi), rel=1e-14)


@pytest.mark.parametrize("eta", [0.3, 1.0, 2.5])
def test_thermal_spectra_match_boosted_state(eta):
    T = et.temperature_of(eta)
    assert et.bose_occupation(T) == pytest.approx(math.sinh(eta) ** 2, rel=1e-10)
    assert et.thermal_entropy(T) == pytest.approx(et.entropy_analytic(0, eta), rel=1e-10)
    assert et.thermal_purity(T) == pytest.approx(et.purity(0, eta), rel=1e-10)


def test_spatial_distribution_width():
    from covosc.oscillator_basis import integrate_1d

    for eta in (0.0, 1.0, 2.0):
        width = et.spatial_width(eta)
        assert width == pytest.approx(math.sqrt(math.cosh(2 * eta)))
        second = integrate_1d(lambda z, eta=eta: z**2 * et.spatial_distribution(eta, z), scale=width)
        assert second == pytest.approx(width**2 / 2, rel=1e-12)
        assert et.spatial_distribution(eta, 0.3) == pytest.approx(et.reduced_density(0, eta, 0.3, 0.3), abs=1e-12)


def test_density_at_rest_is_a_projector():
    z = np.linspace(-2.0, 2.0, 5)
    for a in z:
        for b in z:
            square = integrate_1d(
                lambda y, a=a, b=b: et.reduced_density(0, 0.0, a, y) * et.reduced_density(0, 0.0, y, b)
            )
            assert square == pytest.approx(et.reduced_density(0, 0.0, a, b), abs=1e-14)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_purity_strictly_decreasing_in_rapidity(n):
    etas = np.linspace(0.0, 4.0, 41)
    values = np.array([et.purity(n, eta) for eta in etas])
    assert values[0] == 1.0
    assert np.all(np.diff(values) < 0)
    assert et.purity(n, -1.3) == et.purity(n, 1.3)


@pytest.mark.parametrize("n", [0, 1, 2, 4])
@pytest.mark.parametrize("eta", [0.3, 1.0, 2.5])
def test_purity_closed_form_matches_series(n, eta):
    series = et.SpectralDensity(n, Rapidity(eta)).sum_of_squares()
    assert et.purity(n, eta) == pytest.approx(series, rel=1e-12)


def test_purity_at_large_rapidity_needs_no_series():
    assert et.purity(0, 10.0) == pytest.approx(1 / math.cosh(20.0), rel=1e-14)
    assert 0.0 < et.purity(3, 10.0) < et.purity(3, 9.0)


@pytest.mark.parametrize("n", [0, 2])
def test_truncation_order_is_minimal_at_large_rapidity(n):
    density = et.SpectralDensity(n, Rapidity(5.5))
    terms = density.truncation_order()
    assert density.tail_bound(terms) < 1e-14 <= density.tail_bound(terms - 1)


def test_spectral_sums_beyond_term_budget_rejected():
    with pytest.raises(DomainError):
        et.SpectralDensity(1, Rapidity(10.0)).truncation_order()
    with pytest.raises(DomainError):
        et.entropy_oracle(1, Rapidity(10.0))
    with pytest.raises(DomainError):
        et.thermal_weights(et.temperature_of(10.0))


def test_kernel_grid_beyond_budget_rejected():
    z = np.linspace(-3.0, 3.0, 400)
    with pytest.raises(DomainError):
        et.reduced_density(0, 5.0, z, z)
