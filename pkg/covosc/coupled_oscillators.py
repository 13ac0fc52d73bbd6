"""Two coupled oscillators: normal coordinates, squeezes and the entangled ground state."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from . import config
from .errors import DomainError
from .oscillator_basis import (
    SQRT2,
    QuadratureRule,
    check_index,
    integrate_2d,
    light_cone_scales,
    phi,
    phi_table,
)

# Discarded probability of the truncated series, relative to the k = 0 weight
SERIES_TOLERANCE = 1e-16


@dataclass(frozen=True)
class PhasePoint2:
    """Positions and momenta of the two oscillators."""

    x1: float
    x2: float
    p1: float
    p2: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x1, self.x2, self.p1, self.p2)):
            raise DomainError(f"phase point must be finite: {self}")


@dataclass(frozen=True)
class NormalPoint:
    """Normal coordinates x_pm = (x1 pm x2)/sqrt2 and their momenta."""

    x_plus: float
    x_minus: float
    p_plus: float
    p_minus: float


@dataclass(frozen=True)
class SqueezeParameter:
    eta: float

    def __post_init__(self):
        if not math.isfinite(self.eta):
            raise DomainError(f"eta must be finite, got {self.eta}")
        if abs(self.eta) > config.MAX_RAPIDITY:
            raise DomainError(
                f"|eta| = {abs(self.eta)} exceeds the supported {config.MAX_RAPIDITY}"
            )


def _as_squeeze(s: SqueezeParameter | float) -> SqueezeParameter:
    return s if isinstance(s, SqueezeParameter) else SqueezeParameter(float(s))


def to_normal(p: PhasePoint2) -> NormalPoint:
    return NormalPoint(
        x_plus=(p.x1 + p.x2) / SQRT2,
        x_minus=(p.x1 - p.x2) / SQRT2,
        p_plus=(p.p1 + p.p2) / SQRT2,
        p_minus=(p.p1 - p.p2) / SQRT2,
    )


def from_normal(n: NormalPoint) -> PhasePoint2:
    return PhasePoint2(
        x1=(n.x_plus + n.x_minus) / SQRT2,
        x2=(n.x_plus - n.x_minus) / SQRT2,
        p1=(n.p_plus + n.p_minus) / SQRT2,
        p2=(n.p_plus - n.p_minus) / SQRT2,
    )


def canonical_squeeze(n: NormalPoint, s: SqueezeParameter | float) -> NormalPoint:
    """(x_+, p_-) shrink by e^{-eta}, (x_-, p_+) grow by e^{eta}."""
    eta = _as_squeeze(s).eta
    shrink, grow = math.exp(-eta), math.exp(eta)
    return NormalPoint(
        x_plus=shrink * n.x_plus,
        x_minus=grow * n.x_minus,
        p_plus=grow * n.p_plus,
        p_minus=shrink * n.p_minus,
    )


def lorentz_squeeze(n: NormalPoint, s: SqueezeParameter | float) -> NormalPoint:
    """Positions and momenta move together: the (+) pair shrinks, the (-) pair grows.

    Not canonical.
    """
    eta = _as_squeeze(s).eta
    shrink, grow = math.exp(-eta), math.exp(eta)
    return NormalPoint(
        x_plus=shrink * n.x_plus,
        x_minus=grow * n.x_minus,
        p_plus=shrink * n.p_plus,
        p_minus=grow * n.p_minus,
    )


def total_energy(p: PhasePoint2) -> float:
    return 0.5 * (p.p1**2 + p.x1**2) + 0.5 * (p.p2**2 + p.x2**2)


def total_energy_normal(n: NormalPoint) -> float:
    return 0.5 * (n.p_plus**2 + n.x_plus**2) + 0.5 * (n.p_minus**2 + n.x_minus**2)


def squeezed_energy(n: NormalPoint, s: SqueezeParameter | float) -> float:
    """Quadratic form of the coupled Hamiltonian H_eta in normal coordinates."""
    eta = _as_squeeze(s).eta
    e2, e_2 = math.exp(2.0 * eta), math.exp(-2.0 * eta)
    return 0.5 * (e2 * n.p_plus**2 + e_2 * n.x_plus**2) + 0.5 * (
        e_2 * n.p_minus**2 + e2 * n.x_minus**2
    )


def invariant_hamiltonian(p: PhasePoint2) -> float:
    """Energy of the first oscillator minus that of the second."""
    return 0.5 * (p.p1**2 + p.x1**2) - 0.5 * (p.p2**2 + p.x2**2)


def invariant_hamiltonian_normal(n: NormalPoint) -> float:
    return n.p_plus * n.p_minus + n.x_plus * n.x_minus


def coupled_ground_wf(s: SqueezeParameter | float, x1: ArrayLike, x2: ArrayLike):
    eta = _as_squeeze(s).eta
    a = np.asarray(x1, dtype=float)
    b = np.asarray(x2, dtype=float)
    exponent = -0.25 * (
        math.exp(-2.0 * eta) * (a + b) ** 2 + math.exp(2.0 * eta) * (a - b) ** 2
    )
    values = np.exp(exponent) / math.sqrt(math.pi)
    if np.ndim(x1) == 0 and np.ndim(x2) == 0:
        return float(values)
    return values


def entangled_coefficient(k: int, s: SqueezeParameter | float) -> float:
    """Coefficient (tanh eta)^k / cosh eta of phi_k(x1) phi_k(x2)."""
    k = check_index(k, "k")
    eta = _as_squeeze(s).eta
    return math.tanh(eta) ** k / math.cosh(eta)


def series_terms(s: SqueezeParameter | float) -> int:
    """Number of series terms K with tanh^{2K} eta <= 1e-16 (1 - tanh^2 eta)."""
    eta = _as_squeeze(s).eta
    if eta == 0.0:
        return 1
    t2 = math.tanh(eta) ** 2
    return max(1, math.ceil(math.log(SERIES_TOLERANCE * (1.0 - t2)) / math.log(t2)))


def entangled_series(
    s: SqueezeParameter | float,
    x1: ArrayLike,
    x2: ArrayLike,
    terms: int | None = None,
):
    """Truncated entangled expansion of the coupled ground state."""
    s = _as_squeeze(s)
    terms = series_terms(s) if terms is None else terms
    if terms < 1:
        raise DomainError(f"need at least one term, got {terms}")
    a = np.asarray(x1, dtype=float)
    b = np.asarray(x2, dtype=float)
    table_a = phi_table(terms - 1, a)
    table_b = phi_table(terms - 1, b)
    coefficients = np.array([entangled_coefficient(k, s) for k in range(terms)])
    values = np.tensordot(coefficients, table_a * table_b, axes=1)
    if np.ndim(x1) == 0 and np.ndim(x2) == 0:
        return float(values)
    return values


def entangled_projection(
    j: int,
    k: int,
    s: SqueezeParameter | float,
    rule: QuadratureRule | None = None,
) -> float:
    """Quadrature value of the integral of psi_eta(x1, x2) phi_j(x1) phi_k(x2)."""
    j = check_index(j, "j")
    k = check_index(k, "k")
    s = _as_squeeze(s)
    return integrate_2d(
        lambda a, b: coupled_ground_wf(s, a, b) * phi(j, a) * phi(k, b),
        rule,
        scales=light_cone_scales(s.eta, 0.0),
        light_cone=True,
    )
