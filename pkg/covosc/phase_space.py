"""Momentum-energy wave function, Wigner functions and parton kinematics.

All closed forms here are for the boosted ground state. The Fourier
convention is phi(p_z, p_0) = (1/2pi) int e^{i(z p_z - t p_0)} psi(z, t) dz dt,
under which u pairs with p_u = (p_0 - p_z)/sqrt2 and v with p_v = (p_0 + p_z)/sqrt2.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from . import config
from .covariant_boost import Rapidity, SpaceTimePoint, as_rapidity, boosted_wf
from .errors import DomainError
from .oscillator_basis import (
    SQRT2,
    QuadratureRule,
    gauss_hermite,
    integrate_2d,
    light_cone_scales,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MomentumPoint:
    """Longitudinal momentum and energy separation; floats or same-shape arrays."""

    p_z: ArrayLike
    p_0: ArrayLike

    def __post_init__(self):
        if not (np.all(np.isfinite(self.p_z)) and np.all(np.isfinite(self.p_0))):
            raise DomainError("momentum point must be finite")


@dataclass(frozen=True, eq=False)
class LightConeMomenta:
    p_u: ArrayLike
    p_v: ArrayLike


def to_light_cone_momenta(m: MomentumPoint) -> LightConeMomenta:
    return LightConeMomenta(p_u=(m.p_0 - m.p_z) / SQRT2, p_v=(m.p_0 + m.p_z) / SQRT2)


def from_light_cone_momenta(q: LightConeMomenta) -> MomentumPoint:
    return MomentumPoint(p_z=(q.p_v - q.p_u) / SQRT2, p_0=(q.p_v + q.p_u) / SQRT2)


def _scalar_or_array(values, *likes):
    if all(np.ndim(like) == 0 for like in likes):
        return float(values)
    return values


def momentum_wf(r: Rapidity | float, m: MomentumPoint):
    """(1/pi)^{1/2} exp{-[e^{2eta} p_u^2 + e^{-2eta} p_v^2]/2}.

    The boost squeezes p_u by e^{-eta} like u, so the p_u direction narrows.
    """
    eta = as_rapidity(r).eta
    q = to_light_cone_momenta(m)
    p_u, p_v = np.asarray(q.p_u, dtype=float), np.asarray(q.p_v, dtype=float)
    values = np.exp(
        -0.5 * (math.exp(2.0 * eta) * p_u**2 + math.exp(-2.0 * eta) * p_v**2)
    ) / math.sqrt(math.pi)
    return _scalar_or_array(values, m.p_z, m.p_0)


def momentum_wf_printed(r: Rapidity | float, m: MomentumPoint):
    """The same Gaussian with the e^{+-2eta} factors exchanged.

    This is not the transform of the boosted state; the verifier swaps it in
    to show that the Fourier check catches the exchange.
    """
    return momentum_wf(Rapidity(-as_rapidity(r).eta), m)


def momentum_wf_oracle(
    r: Rapidity | float, m: MomentumPoint, order: int | None = None
):
    """Gauss-Hermite Fourier transform of boosted_wf(0, eta).

    The state is even in (z, t), so the kernel reduces to cos(z p_z - t p_0).
    """
    r = as_rapidity(r)
    rule = gauss_hermite(order or config.FOURIER_QUADRATURE_ORDER)
    scales = light_cone_scales(r.eta)
    p_z = np.atleast_1d(np.asarray(m.p_z, dtype=float))
    p_0 = np.atleast_1d(np.asarray(m.p_0, dtype=float))
    p_z, p_0 = np.broadcast_arrays(p_z, p_0)
    values = np.empty(p_z.shape)
    for index in np.ndindex(p_z.shape):
        values[index] = integrate_2d(
            lambda z, t, kz=p_z[index], k0=p_0[index]: (
                np.cos(z * kz - t * k0) * boosted_wf(0, r, SpaceTimePoint(z, t))
            ),
            rule,
            scales=scales,
            light_cone=True,
        ) / (2.0 * math.pi)
    if np.ndim(m.p_z) == 0 and np.ndim(m.p_0) == 0:
        return float(values.reshape(-1)[0])
    return values


def _position_moments(r: Rapidity, rule: QuadratureRule | None):
    def moment(g):
        return integrate_2d(
            lambda z, t: g(z, t) * boosted_wf(0, r, SpaceTimePoint(z, t)) ** 2,
            rule,
            scales=light_cone_scales(r.eta, r.eta),
            light_cone=True,
        )

    return moment


def _momentum_moments(r: Rapidity, rule: QuadratureRule | None):
    # first axis runs along p_v, second along -p_u
    def moment(g):
        return integrate_2d(
            lambda p_z, p_0: g(p_z, p_0) * momentum_wf(r, MomentumPoint(p_z, p_0)) ** 2,
            rule,
            scales=light_cone_scales(r.eta, r.eta),
            light_cone=True,
        )

    return moment


def uncertainty_products(
    r: Rapidity | float, rule: QuadratureRule | None = None
) -> tuple[float, float]:
    """(<u^2><p_u^2>, <v^2><p_v^2>) by quadrature; both are 1/4 for every eta."""
    r = as_rapidity(r)
    position = _position_moments(r, rule)
    momentum = _momentum_moments(r, rule)
    u2 = position(lambda z, t: ((z + t) / SQRT2) ** 2)
    v2 = position(lambda z, t: ((z - t) / SQRT2) ** 2)
    pu2 = momentum(lambda p_z, p_0: ((p_0 - p_z) / SQRT2) ** 2)
    pv2 = momentum(lambda p_z, p_0: ((p_0 + p_z) / SQRT2) ** 2)
    logger.debug(
        "eta=%g: <u2>=%.12g <pu2>=%.12g <v2>=%.12g <pv2>=%.12g", r.eta, u2, pu2, v2, pv2
    )
    return u2 * pu2, v2 * pv2


def spatial_second_moment(r: Rapidity | float, rule: QuadratureRule | None = None) -> float:
    """<z^2> of |boosted_wf(0, eta)|^2; equals cosh(2 eta)/2."""
    return _position_moments(as_rapidity(r), rule)(lambda z, t: z**2)


def momentum_second_moment(
    r: Rapidity | float, rule: QuadratureRule | None = None
) -> float:
    """<p_z^2> of |momentum_wf(eta)|^2; equals cosh(2 eta)/2."""
    return _momentum_moments(as_rapidity(r), rule)(lambda p_z, p_0: p_z**2)


@dataclass(frozen=True)
class WignerSample:
    z: float
    p_z: float
    t: float
    p_0: float
    w: float

    def __post_init__(self):
        if not math.isfinite(self.w):
            raise DomainError(f"Wigner value must be finite, got {self.w}")

    @classmethod
    def at(cls, r: Rapidity | float, z: float, p_z: float, t: float, p_0: float):
        return cls(z, p_z, t, p_0, wigner_full(r, z, p_z, t, p_0))


def wigner_full(
    r: Rapidity | float, z: ArrayLike, p_z: ArrayLike, t: ArrayLike, p_0: ArrayLike
):
    """Wigner function of the boosted ground state in (z, p_z, t, p_0).

    (1/pi^2) exp{-[e^{-2eta} u^2 + e^{2eta} v^2] - [e^{2eta} p_u^2 + e^{-2eta} p_v^2]};
    its (p_z, p_0) marginal is |boosted_wf(0, eta)|^2.
    """
    eta = as_rapidity(r).eta
    z, p_z, t, p_0 = (np.asarray(x, dtype=float) for x in (z, p_z, t, p_0))
    u, v = (z + t) / SQRT2, (z - t) / SQRT2
    p_u, p_v = (p_0 - p_z) / SQRT2, (p_0 + p_z) / SQRT2
    shrink, grow = math.exp(-2.0 * eta), math.exp(2.0 * eta)
    exponent = shrink * u**2 + grow * v**2 + grow * p_u**2 + shrink * p_v**2
    values = np.exp(-exponent) / math.pi**2
    return _scalar_or_array(values, z, p_z, t, p_0)


def wigner_integral(r: Rapidity | float, order: int = 24) -> float:
    """4D tensor Gauss-Hermite value of the integral of wigner_full."""
    eta = as_rapidity(r).eta
    rule = gauss_hermite(order)
    half = math.exp(-eta), math.exp(eta)
    # envelope widths along u, v, p_u, p_v
    scales = (half[1], half[0], half[0], half[1])
    u, v, p_u, p_v = np.meshgrid(
        *(s * rule.nodes for s in scales), indexing="ij", sparse=True
    )
    values = wigner_full(
        eta,
        (u + v) / SQRT2,
        (p_v - p_u) / SQRT2,
        (u - v) / SQRT2,
        (p_v + p_u) / SQRT2,
    )
    w = rule.scaled_weights
    total = np.einsum("i,j,k,l,ijkl->", w, w, w, w, values)
    return float(math.prod(scales) * total)


def wigner_marginal(
    r: Rapidity | float, z: float, t: float, rule: QuadratureRule | None = None
) -> float:
    """Quadrature value of the integral of wigner_full over p_z and p_0."""
    r = as_rapidity(r)
    return integrate_2d(
        lambda p_z, p_0: wigner_full(r, z, p_z, t, p_0),
        rule,
        scales=light_cone_scales(r.eta, r.eta),
        light_cone=True,
    )


def wigner_reduced(r: Rapidity | float, z: ArrayLike, p_z: ArrayLike):
    """Wigner function left after integrating out t and p_0: exp{-(z^2+p_z^2)/C}/(pi C)."""
    c2 = math.cosh(2.0 * as_rapidity(r).eta)
    zs, ps = np.asarray(z, dtype=float), np.asarray(p_z, dtype=float)
    values = np.exp(-(zs**2 + ps**2) / c2) / (math.pi * c2)
    return _scalar_or_array(values, z, p_z)


def wigner_reduced_oracle(
    r: Rapidity | float, z: float, p_z: float, rule: QuadratureRule | None = None
) -> float:
    """Quadrature value of the integral of wigner_full over t and p_0."""
    r = as_rapidity(r)
    c2, s2 = math.cosh(2.0 * r.eta), math.sinh(2.0 * r.eta)
    # in t and p_0 the function is exp(-C x^2) centred on (S/C) z and (S/C) p_z
    width = 1.0 / math.sqrt(c2)
    t_mean, p_mean = s2 / c2 * z, s2 / c2 * p_z
    return integrate_2d(
        lambda t, p_0: wigner_full(r, z, p_z, t + t_mean, p_0 + p_mean),
        rule,
        scales=(width, width),
    )


def wigner_radius(r: Rapidity | float) -> float:
    return math.sqrt(math.cosh(2.0 * as_rapidity(r).eta))


def wigner_radius_beta(beta: float) -> float:
    """sqrt((1 + beta^2)/(1 - beta^2)), the radius written with the speed."""
    if not abs(beta) < 1.0:
        raise DomainError(f"|beta| must be below 1, got {beta}")
    b2 = beta * beta
    return math.sqrt((1.0 + b2) / (1.0 - b2))


def _check_gamma(gamma: float) -> float:
    if not (math.isfinite(gamma) and gamma >= 1.0):
        raise DomainError(f"gamma must be a finite value >= 1, got {gamma}")
    return float(gamma)


def rapidity_from_gamma(gamma: float) -> Rapidity:
    return Rapidity(math.acosh(_check_gamma(gamma)))


def interaction_time_ratio(gamma: float) -> float:
    """e^{-2eta} with cosh eta = gamma: probe crossing time over internal period."""
    gamma = _check_gamma(gamma)
    return (gamma + math.sqrt(gamma * gamma - 1.0)) ** -2
