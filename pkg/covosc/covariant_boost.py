"""Covariant oscillator in the (z, t) plane: boosts, light-cone squeeze, boosted states.

Only the longitudinal and time separations are modelled; transverse
coordinates are untouched by a boost along z.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy import integrate

from . import config
from .errors import AccuracyError, DomainError
from .oscillator_basis import (
    SQRT2,
    QuadratureRule,
    SampledField2D,
    check_index,
    gauss_hermite,
    integrate_2d,
    light_cone_scales,
    phi,
)

logger = logging.getLogger(__name__)

# Index limits for the closed-form evaluators
MAX_BOOSTED_INDEX = 32
MAX_REST_INDEX = 64


@dataclass(frozen=True)
class Rapidity:
    """Boost parameter eta; the velocity is beta = tanh(eta)."""

    eta: float

    def __post_init__(self):
        if not math.isfinite(self.eta):
            raise DomainError(f"eta must be finite, got {self.eta}")
        if abs(self.eta) > config.MAX_RAPIDITY:
            raise DomainError(
                f"|eta| = {abs(self.eta)} exceeds the supported {config.MAX_RAPIDITY}"
            )

    @classmethod
    def from_beta(cls, beta: float) -> Rapidity:
        if not abs(beta) < 1.0:
            raise DomainError(f"|beta| must be below 1, got {beta}")
        return cls(math.atanh(beta))

    @property
    def beta(self) -> float:
        return math.tanh(self.eta)

    @property
    def gamma(self) -> float:
        return math.cosh(self.eta)


def as_rapidity(r: Rapidity | float) -> Rapidity:
    return r if isinstance(r, Rapidity) else Rapidity(float(r))


@dataclass(frozen=True, eq=False)
class SpaceTimePoint:
    """Longitudinal and time separation; either floats or same-shape arrays."""

    z: ArrayLike
    t: ArrayLike

    def __post_init__(self):
        if not (np.all(np.isfinite(self.z)) and np.all(np.isfinite(self.t))):
            raise DomainError("space-time point must be finite")


@dataclass(frozen=True, eq=False)
class LightConePoint:
    u: ArrayLike
    v: ArrayLike


def boost_zt(p: SpaceTimePoint, r: Rapidity | float) -> SpaceTimePoint:
    eta = as_rapidity(r).eta
    c, s = math.cosh(eta), math.sinh(eta)
    return SpaceTimePoint(z=p.z * c + p.t * s, t=p.z * s + p.t * c)


def to_light_cone(p: SpaceTimePoint) -> LightConePoint:
    return LightConePoint(u=(p.z + p.t) / SQRT2, v=(p.z - p.t) / SQRT2)


def from_light_cone(q: LightConePoint) -> SpaceTimePoint:
    return SpaceTimePoint(z=(q.u + q.v) / SQRT2, t=(q.u - q.v) / SQRT2)


def rest_wf(n: int, p: SpaceTimePoint):
    """[1/(pi n! 2^n)]^{1/2} H_n(z) exp(-(z^2 + t^2)/2) = phi_n(z) phi_0(t)."""
    n = check_index(n)
    if n > MAX_REST_INDEX:
        raise DomainError(f"n must be <= {MAX_REST_INDEX}, got {n}")
    return phi(n, p.z) * phi(0, p.t)


def boosted_wf(n: int, r: Rapidity | float, p: SpaceTimePoint):
    """Boosted oscillator state, evaluated by substitution into the rest state.

    psi_eta(z, t) = psi_0(z', t') with (z', t') the point boosted by -eta, so
    u' = e^{-eta} u and v' = e^{eta} v.
    """
    n = check_index(n)
    r = as_rapidity(r)
    if n > MAX_BOOSTED_INDEX:
        raise DomainError(f"n must be <= {MAX_BOOSTED_INDEX}, got {n}")
    if abs(r.eta) > config.MAX_SCAN_RAPIDITY:
        raise DomainError(
            f"|eta| must be <= {config.MAX_SCAN_RAPIDITY} for wave functions, got {r.eta}"
        )
    return rest_wf(n, boost_zt(p, Rapidity(-r.eta)))


def contraction_factor(n: int, r: Rapidity | float) -> float:
    """Overlap of the rest and boosted n-th states: (1 - beta^2)^{(n+1)/2}."""
    n = check_index(n)
    return (1.0 / as_rapidity(r).gamma) ** (n + 1)


def overlap_rest_boosted(
    n: int,
    m: int,
    r: Rapidity | float,
    rule: QuadratureRule | None = None,
    tolerance: float | None = None,
) -> float:
    """Quadrature value of the integral of psi_0^n psi_eta^m over the (z, t) plane.

    Evaluated with two rule orders; disagreement beyond ``tolerance`` raises
    :class:`AccuracyError`.
    """
    n = check_index(n)
    m = check_index(m, "m")
    r = as_rapidity(r)
    tolerance = config.overlap_tolerance(r.eta) if tolerance is None else tolerance
    rule = rule or gauss_hermite(config.quadrature_order())
    scales = light_cone_scales(0.0, r.eta)

    def integrand(z, t):
        p = SpaceTimePoint(z, t)
        return rest_wf(n, p) * boosted_wf(m, r, p)

    estimate = integrate_2d(integrand, rule, scales=scales, light_cone=True)
    check = integrate_2d(
        integrand,
        gauss_hermite(rule.order + config.CONVERGENCE_ORDER_STEP),
        scales=scales,
        light_cone=True,
    )
    if abs(estimate - check) > tolerance:
        raise AccuracyError(estimate, check, tolerance)
    logger.debug("overlap(%d, %d, eta=%g) = %.15g", n, m, r.eta, estimate)
    return estimate


def norm_oracle(n: int, r: Rapidity | float, rule: QuadratureRule | None = None) -> float:
    """Quadrature value of the integral of boosted_wf(n, eta)^2."""
    r = as_rapidity(r)
    return integrate_2d(
        lambda z, t: boosted_wf(n, r, SpaceTimePoint(z, t)) ** 2,
        rule,
        scales=light_cone_scales(r.eta, r.eta),
        light_cone=True,
    )


def gaussian_invariant_form(p: SpaceTimePoint):
    """exp(-(z^2 - t^2)/2): boost invariant but not normalizable along t."""
    return np.exp(-0.5 * (np.asarray(p.z) ** 2 - np.asarray(p.t) ** 2))


def invariant_form_partial_integrals(
    z: float, half_widths: Sequence[float]
) -> list[float]:
    """Integrals of the invariant Gaussian over t in [-T, T], one per T."""
    results = []
    for half_width in half_widths:
        value, _ = integrate.quad(
            lambda t: float(gaussian_invariant_form(SpaceTimePoint(z, t))),
            -half_width,
            half_width,
            limit=200,
        )
        results.append(value)
    return results


def covariant_residual(
    n: int,
    r: Rapidity | float,
    half_width: float = 5.0,
    points: int = 401,
) -> float:
    """Relative residual of the covariant oscillator equation on a sampled grid.

    Checks 1/2 {[z^2 - d_z^2] - [t^2 - d_t^2]} psi = n psi with fourth-order
    second differences; returns max|residual| / max|psi| over the interior.
    """
    n = check_index(n)
    r = as_rapidity(r)
    field = SampledField2D.from_function(
        lambda z, t: boosted_wf(n, r, SpaceTimePoint(z, t)),
        (-half_width, half_width),
        (-half_width, half_width),
        points,
        points,
    )
    zz, tt = field.mesh()
    psi = field.values
    lhs = 0.5 * (
        (zz**2 * psi - field.second_derivative(0))
        - (tt**2 * psi - field.second_derivative(1))
    )
    residual = field.interior(lhs - n * psi)
    return float(np.max(np.abs(residual)) / np.max(np.abs(psi)))
