import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covosc import phase_space as ps
from covosc.covariant_boost import SpaceTimePoint, boosted_wf
from covosc.errors import DomainError
from covosc.oscillator_basis import integrate_2d


def _grid(points=17, half_width=2.0):
    axis = np.linspace(-half_width, half_width, points)
    p_z, p_0 = np.meshgrid(axis, axis, indexing="ij")
    return ps.MomentumPoint(p_z, p_0)


@settings(max_examples=100, deadline=None)
@given(p_z=st.floats(-50, 50), p_0=st.floats(-50, 50))
def test_light_cone_momenta_round_trip(p_z, p_0):
    back = ps.from_light_cone_momenta(ps.to_light_cone_momenta(ps.MomentumPoint(p_z, p_0)))
    assert back.p_z == pytest.approx(p_z, abs=1e-12)
    assert back.p_0 == pytest.approx(p_0, abs=1e-12)


def test_momentum_wf_at_rest_is_isotropic():
    m = ps.MomentumPoint(0.5, -1.0)
    expected = math.exp(-(0.25 + 1.0) / 2) / math.sqrt(math.pi)
    assert ps.momentum_wf(0.0, m) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("eta", [0.0, 0.5, 1.0, 1.5])
def test_momentum_wf_is_fourier_transform_of_boosted_state(eta):
    grid = _grid()
    error = np.max(np.abs(ps.momentum_wf(eta, grid) - ps.momentum_wf_oracle(eta, grid)))
    assert error <= 1e-7


def test_printed_momentum_wf_fails_fourier_check():
    grid = _grid(9)
    error = np.max(np.abs(ps.momentum_wf_printed(1.0, grid) - ps.momentum_wf_oracle(1.0, grid)))
    assert error > 1e-2


def test_momentum_oracle_scalar_point():
    m = ps.MomentumPoint(0.3, 0.1)
    assert ps.momentum_wf_oracle(0.7, m) == pytest.approx(ps.momentum_wf(0.7, m), abs=1e-7)


@pytest.mark.parametrize("eta", [0.0, 0.5, 1.0, 2.0])
def test_uncertainty_products_are_invariant(eta):
    product_u, product_v = ps.uncertainty_products(eta)
    assert product_u == pytest.approx(0.25, abs=1e-8)
    assert product_v == pytest.approx(0.25, abs=1e-8)
    assert product_u == pytest.approx(product_v, abs=1e-10)


@pytest.mark.parametrize("eta", [0.5, 1.0, 2.0])
def test_spatial_and_momentum_widths_grow_together(eta):
    spatial = ps.spatial_second_moment(eta)
    momentum = ps.momentum_second_moment(eta)
    assert spatial == pytest.approx(math.cosh(2 * eta) / 2, rel=1e-12)
    assert momentum == pytest.approx(spatial, rel=1e-12)
    assert math.sqrt(2 * spatial) == pytest.approx(ps.wigner_radius(eta), rel=1e-12)


def test_wigner_at_rest_origin():
    assert ps.wigner_full(0.0, 0.0, 0.0, 0.0, 0.0) == pytest.approx(math.pi**-2, rel=1e-15)
    sample = ps.WignerSample.at(0.0, 1.0, 0.0, 0.0, 0.0)
    assert sample.w == pytest.approx(math.exp(-1) / math.pi**2, rel=1e-14)


@pytest.mark.parametrize("eta", [0.0, 1.0])
def test_wigner_normalization(eta):
    assert ps.wigner_integral(eta) == pytest.approx(1.0, abs=1e-7)


@pytest.mark.parametrize("eta", [0.5, 1.0])
def test_wigner_marginal_is_probability_density(eta):
    for z, t in [(0.0, 0.0), (0.5, -0.3), (1.2, 0.8), (-2.0, 1.5)]:
        expected = boosted_wf(0, eta, SpaceTimePoint(z, t)) ** 2
        assert ps.wigner_marginal(eta, z, t) == pytest.approx(expected, abs=1e-10)


@settings(max_examples=50, deadline=None)
@given(
    eta=st.floats(-2.0, 2.0),
    z=st.floats(-5, 5),
    p_z=st.floats(-5, 5),
    t=st.floats(-5, 5),
    p_0=st.floats(-5, 5),
)
def test_wigner_is_positive(eta, z, p_z, t, p_0):
    assert ps.wigner_full(eta, z, p_z, t, p_0) >= 0.0


@pytest.mark.parametrize("eta", [0.5, 1.0, 2.0])
def test_reduced_wigner(eta):
    radius = ps.wigner_radius(eta)
    norm = integrate_2d(lambda z, p: ps.wigner_reduced(eta, z, p), scales=(radius, radius))
    assert norm == pytest.approx(1.0, abs=1e-10)
    # e-folding radius
    peak = ps.wigner_reduced(eta, 0.0, 0.0)
    assert ps.wigner_reduced(eta, radius, 0.0) == pytest.approx(peak / math.e, rel=1e-12)
    for z, p in [(0.0, 0.0), (1.0, -0.5), (-2.0, 2.0)]:
        assert ps.wigner_reduced_oracle(eta, z, p) == pytest.approx(ps.wigner_reduced(eta, z, p), abs=1e-10)


def test_wigner_radius_forms():
    assert ps.wigner_radius(0.0) == 1.0
    assert ps.wigner_radius_beta(0.6) == pytest.approx(math.sqrt(2.125), rel=1e-14)
    for eta in (0.2, 1.0, 3.0):
        assert ps.wigner_radius(eta) == pytest.approx(ps.wigner_radius_beta(math.tanh(eta)), rel=1e-14)
    with pytest.raises(DomainError):
        ps.wigner_radius_beta(-1.0)


def test_interaction_time_ratio():
    assert ps.interaction_time_ratio(1.0) == 1.0
    assert 1.55e-8 <= ps.interaction_time_ratio(4000.0) <= 1.65e-8
    gamma = 1e4
    assert ps.interaction_time_ratio(gamma) == pytest.approx(1 / (4 * gamma**2), rel=1e-4)
    with pytest.raises(DomainError):
        ps.interaction_time_ratio(0.9)


def test_rapidity_from_gamma():
    r = ps.rapidity_from_gamma(1.25)
    assert r.beta == pytest.approx(0.6, rel=1e-14)
    assert math.exp(-2 * r.eta) == pytest.approx(ps.interaction_time_ratio(1.25), rel=1e-14)
