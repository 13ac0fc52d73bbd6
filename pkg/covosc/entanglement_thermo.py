"""Entangled expansion of the boosted state, its reduced density matrix and temperature.

Tracing the boosted oscillator over the unobserved time separation leaves a
mixed state that is diagonal in the oscillator basis. Its eigenvalues form a
negative-binomial sequence, which for the ground state is exactly a thermal
(Boltzmann) spectrum at the temperature fixed by tanh^2(eta) = exp(-1/T).
"""

from __future__ import annotations

import logging
import math
import warnings
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache
from typing import ClassVar, Literal

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import gammaln

from . import config
from .covariant_boost import Rapidity, SpaceTimePoint, as_rapidity, boosted_wf
from .errors import AccuracyError, DomainError, TruncationWarning
from .oscillator_basis import (
    QuadratureRule,
    check_index,
    integrate_1d,
    integrate_2d,
    log_binomial,
    light_cone_scales,
    phi,
    phi_table,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Temperature:
    """Temperature in units of hbar omega / k_B; ``Temperature.ZERO`` is the rest limit."""

    value: float
    ZERO: ClassVar[Temperature]

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0.0:
            raise DomainError(f"temperature must be finite and >= 0, got {self.value}")

    @property
    def is_zero(self) -> bool:
        return self.value == 0.0


Temperature.ZERO = Temperature(0.0)


def _as_temperature(T: Temperature | float) -> Temperature:
    return T if isinstance(T, Temperature) else Temperature(float(T))


@lru_cache(maxsize=256)
def _truncation_order(n: int, eta: float, tolerance: float) -> int:
    if eta == 0.0:
        return 1
    density = SpectralDensity(n, Rapidity(eta))
    limit = config.MAX_SPECTRAL_TERMS
    if density.tanh_squared == 0.0:
        return 1
    # the n = 0 tail is exactly tanh^{2K} eta; start there and double
    high = math.ceil(math.log(tolerance) / math.log(density.tanh_squared))
    high = min(max(high, 1), limit)
    while density.tail_bound(high) >= tolerance:
        if high >= limit:
            raise DomainError(
                f"spectral sum for n={n}, eta={eta:g} needs more than {limit} terms"
            )
        high = min(2 * high, limit)
    # the tail bound is non-increasing in K
    low = 1
    while low < high:
        middle = (low + high) // 2
        if density.tail_bound(middle) < tolerance:
            high = middle
        else:
            low = middle + 1
    return low


def _check_kernel_size(terms: int, points: int) -> None:
    if terms * points > config.MAX_KERNEL_VALUES:
        raise DomainError(
            f"{terms} terms at {points} points exceed the kernel budget of "
            f"{config.MAX_KERNEL_VALUES} basis values"
        )


@dataclass(frozen=True)
class SpectralDensity:
    """Eigenvalues p_k of the reduced density matrix of the boosted n-th state.

    p_k = (1/cosh^2 eta)^{n+1} C(n+k, k) tanh^{2k} eta, the weight of
    phi_{n+k}. Iterating yields p_0, p_1, ... without end.
    """

    n: int
    eta: Rapidity

    def __post_init__(self):
        check_index(self.n)
        if not isinstance(self.eta, Rapidity):
            object.__setattr__(self, "eta", as_rapidity(self.eta))

    @property
    def tanh_squared(self) -> float:
        return math.tanh(self.eta.eta) ** 2

    def log_eigenvalue(self, k: int) -> float:
        k = check_index(k, "k")
        eta = self.eta.eta
        if eta == 0.0:
            return 0.0 if k == 0 else -math.inf
        return (
            -2.0 * (self.n + 1) * math.log(math.cosh(eta))
            + log_binomial(self.n + k, k)
            + 2.0 * k * math.log(abs(math.tanh(eta)))
        )

    def eigenvalue(self, k: int) -> float:
        return math.exp(self.log_eigenvalue(k))

    def __iter__(self) -> Iterator[float]:
        k = 0
        while True:
            yield self.eigenvalue(k)
            k += 1

    def truncation_order(self, tolerance: float | None = None) -> int:
        """Smallest K whose analytic tail bound is below ``tolerance``."""
        tolerance = config.SPECTRAL_TAIL_TOLERANCE if tolerance is None else tolerance
        return _truncation_order(self.n, abs(self.eta.eta), tolerance)

    def tail_bound(self, terms: int) -> float:
        """Upper bound on the mass sum_{k >= terms} p_k left out by truncation.

        The ratio p_{k+1}/p_k = tanh^2(eta) (n+k+1)/(k+1) decreases in k, so
        the tail is dominated by a geometric series.
        """
        terms = check_index(terms, "terms")
        if self.eta.eta == 0.0:
            return 0.0 if terms >= 1 else 1.0
        ratio = self.tanh_squared * (self.n + terms + 1) / (terms + 1)
        if ratio >= 1.0:
            return 1.0
        return min(1.0, self.eigenvalue(terms) / (1.0 - ratio))

    def log_eigenvalues(self, terms: int | None = None) -> np.ndarray:
        terms = self.truncation_order() if terms is None else terms
        k = np.arange(terms)
        eta = self.eta.eta
        if eta == 0.0:
            return np.where(k == 0, 0.0, -np.inf)
        log_binom = gammaln(self.n + k + 1) - gammaln(k + 1) - gammaln(self.n + 1)
        return (
            -2.0 * (self.n + 1) * math.log(math.cosh(eta))
            + log_binom
            + 2.0 * k * math.log(abs(math.tanh(eta)))
        )

    def eigenvalues(self, terms: int | None = None) -> np.ndarray:
        return np.exp(self.log_eigenvalues(terms))

    def sum_of_squares(self, terms: int | None = None) -> float:
        """sum_k p_k^2 over the truncated sequence."""
        return float(np.sum(np.exp(2.0 * self.log_eigenvalues(terms))))


def expansion_coefficient(n: int, k: int, r: Rapidity | float) -> float:
    """Coefficient of phi_{n+k}(z) phi_k(t) in the boosted n-th state."""
    n = check_index(n)
    k = check_index(k, "k")
    eta = as_rapidity(r).eta
    if eta == 0.0:
        return 1.0 if k == 0 else 0.0
    tanh = math.tanh(eta)
    magnitude = math.exp(
        -(n + 1) * math.log(math.cosh(eta))
        + 0.5 * log_binomial(n + k, k)
        + k * math.log(abs(tanh))
    )
    return -magnitude if (tanh < 0.0 and k % 2 == 1) else magnitude


def expansion_projection(
    n: int,
    k: int,
    r: Rapidity | float,
    time_index: Literal["k", "n"] = "k",
    rule: QuadratureRule | None = None,
) -> float:
    """Quadrature projection of the boosted n-th state on phi_{n+k}(z) phi_j(t).

    ``time_index="k"`` takes j = k; ``"n"`` takes j = n, the printed reading of
    the expansion, so the two can be compared.
    """
    n = check_index(n)
    k = check_index(k, "k")
    if time_index not in ("k", "n"):
        raise DomainError(f"time_index must be 'k' or 'n', got {time_index!r}")
    r = as_rapidity(r)
    j = k if time_index == "k" else n
    return integrate_2d(
        lambda z, t: boosted_wf(n, r, SpaceTimePoint(z, t)) * phi(n + k, z) * phi(j, t),
        rule,
        scales=light_cone_scales(r.eta, 0.0),
        light_cone=True,
    )


def reduced_density(
    n: int,
    r: Rapidity | float,
    z: ArrayLike,
    z2: ArrayLike,
    terms: int | None = None,
):
    """Reduced density kernel rho(z, z2) = sum_k p_k phi_{n+k}(z) phi_{n+k}(z2)."""
    density = SpectralDensity(check_index(n), as_rapidity(r))
    if terms is None:
        terms = density.truncation_order()
    else:
        tail = density.tail_bound(terms)
        if tail > config.TRUNCATION_WARNING_THRESHOLD:
            logger.warning(
                "reduced density truncated at %d terms leaves mass up to %.3e",
                terms,
                tail,
            )
            warnings.warn(
                f"{terms} terms leave up to {tail:.3e} of the trace",
                TruncationWarning,
                stacklevel=2,
            )
    a, b = np.broadcast_arrays(np.asarray(z, dtype=float), np.asarray(z2, dtype=float))
    _check_kernel_size(n + terms, a.size)
    weights = density.eigenvalues(terms)
    top = n + terms - 1
    values = np.tensordot(weights, phi_table(top, a)[n:] * phi_table(top, b)[n:], axes=1)
    if np.ndim(z) == 0 and np.ndim(z2) == 0:
        return float(values)
    return values


def density_kernel_closed_form(r: Rapidity | float, z: ArrayLike, z2: ArrayLike):
    """Ground-state (n = 0) reduced kernel as a single Gaussian."""
    c2 = math.cosh(2.0 * as_rapidity(r).eta)
    a = np.asarray(z, dtype=float)
    b = np.asarray(z2, dtype=float)
    return np.exp(-0.25 * ((a + b) ** 2 / c2 + (a - b) ** 2 * c2)) / math.sqrt(
        math.pi * c2
    )


def reduced_trace_oracle(
    n: int, r: Rapidity | float, rule: QuadratureRule | None = None
) -> float:
    """Quadrature value of the integral of rho(z, z)."""
    r = as_rapidity(r)
    return integrate_1d(
        lambda z: reduced_density(n, r, z, z),
        rule,
        scale=math.sqrt(math.cosh(2.0 * r.eta)),
    )


def purity(n: int, r: Rapidity | float) -> float:
    """Tr rho^2 = sum_k p_k^2 in its finite Legendre form.

    With C = cosh 2eta, a = (1 + 1/C)/2 and b = (1 - 1/C)/2 the series sums to
    (1/C) sum_{j <= n} C(n, j)^2 b^{2j} a^{2(n-j)}.
    """
    n = check_index(n)
    inverse = 1.0 / math.cosh(2.0 * as_rapidity(r).eta)
    if inverse == 1.0:
        return 1.0
    j = np.arange(n + 1)
    log_binom = gammaln(n + 1) - gammaln(j + 1) - gammaln(n - j + 1)
    log_terms = 2.0 * (
        log_binom
        + j * math.log(0.5 * (1.0 - inverse))
        + (n - j) * math.log(0.5 * (1.0 + inverse))
    )
    return inverse * float(np.sum(np.exp(log_terms)))


def purity_oracle(n: int, r: Rapidity | float, rule: QuadratureRule | None = None) -> float:
    """Quadrature value of the double integral of rho(z, z') rho(z', z)."""
    r = as_rapidity(r)
    c2 = math.cosh(2.0 * r.eta)
    return integrate_2d(
        lambda a, b: reduced_density(n, r, a, b) ** 2,
        rule,
        scales=(math.sqrt(c2), 1.0 / math.sqrt(c2)),
        light_cone=True,
    )


def entropy_analytic(n: int, r: Rapidity | float) -> float:
    """Closed-form von Neumann entropy of the reduced boosted n-th state."""
    density = SpectralDensity(check_index(n), as_rapidity(r))
    eta = density.eta.eta
    if eta == 0.0:
        return 0.0
    s2 = math.sinh(eta) ** 2
    # cosh^2 ln cosh^2 - sinh^2 ln sinh^2 without the cancellation
    head = (n + 1) * (s2 * math.log1p(1.0 / s2) + math.log1p(s2))
    if n == 0:
        return head
    terms = density.truncation_order()
    k = np.arange(terms)
    log_binom = gammaln(n + k + 1) - gammaln(k + 1) - gammaln(n + 1)
    return head - float(np.sum(density.eigenvalues(terms) * log_binom))


def entropy_oracle(n: int, r: Rapidity | float) -> float:
    """-sum p_k ln p_k straight from the eigenvalues."""
    density = SpectralDensity(check_index(n), as_rapidity(r))
    p = density.eigenvalues()
    total = float(np.sum(p))
    if abs(total - 1.0) > config.TRUNCATION_WARNING_THRESHOLD:
        raise AccuracyError(total, 1.0, config.TRUNCATION_WARNING_THRESHOLD)
    p = p[p > 0.0]
    return float(-np.sum(p * np.log(p))) + 0.0


def entropy_velocity_form(n: int, beta: float) -> float:
    """Entropy written with the hadron speed beta = v/c.

    The prefactor of the second sum is (1 - beta^2)^{n+1}.
    """
    n = check_index(n)
    if not abs(beta) < 1.0:
        raise DomainError(f"|beta| must be below 1, got {beta}")
    if beta == 0.0:
        return 0.0
    b2 = beta * beta
    head = -(n + 1) * (math.log1p(-b2) + b2 * math.log(b2) / (1.0 - b2))
    if n == 0:
        return head
    terms = SpectralDensity(n, Rapidity.from_beta(abs(beta))).truncation_order()
    k = np.arange(terms)
    log_binom = gammaln(n + k + 1) - gammaln(k + 1) - gammaln(n + 1)
    log_weights = (n + 1) * math.log1p(-b2) + log_binom + k * math.log(b2)
    return head - float(np.sum(np.exp(log_weights) * log_binom))


def mean_excitation(n: int, r: Rapidity | float) -> float:
    """Mean of k under p_k: (n + 1) sinh^2 eta."""
    return (check_index(n) + 1) * math.sinh(as_rapidity(r).eta) ** 2


def temperature_of(r: Rapidity | float) -> Temperature:
    eta = as_rapidity(r).eta
    if eta == 0.0:
        return Temperature.ZERO
    return Temperature(-1.0 / (2.0 * math.log(abs(math.tanh(eta)))))


def rapidity_of(T: Temperature | float) -> Rapidity:
    T = _as_temperature(T)
    if T.is_zero:
        return Rapidity(0.0)
    return Rapidity(math.atanh(math.exp(-0.5 / T.value)))


def _thermal_terms(T: Temperature) -> int:
    # tail of the geometric weights is exp(-K/T)
    terms = max(1, math.ceil(-T.value * math.log(config.SPECTRAL_TAIL_TOLERANCE)))
    if terms > config.MAX_SPECTRAL_TERMS:
        raise DomainError(
            f"thermal sum at T={T.value:g} needs more than {config.MAX_SPECTRAL_TERMS} terms"
        )
    return terms


def thermal_weights(T: Temperature | float, terms: int | None = None) -> np.ndarray:
    """Boltzmann weights (1 - e^{-1/T}) e^{-k/T} of the thermal oscillator."""
    T = _as_temperature(T)
    if T.is_zero:
        return np.array([1.0])
    terms = _thermal_terms(T) if terms is None else terms
    k = np.arange(terms)
    return -math.expm1(-1.0 / T.value) * np.exp(-k / T.value)


def thermal_density(
    T: Temperature | float, z: ArrayLike, z2: ArrayLike, terms: int | None = None
):
    """Thermal kernel (1 - e^{-1/T}) sum_k e^{-k/T} phi_k(z) phi_k(z2)."""
    weights = thermal_weights(T, terms)
    a, b = np.broadcast_arrays(np.asarray(z, dtype=float), np.asarray(z2, dtype=float))
    _check_kernel_size(len(weights), a.size)
    top = len(weights) - 1
    values = np.tensordot(weights, phi_table(top, a) * phi_table(top, b), axes=1)
    if np.ndim(z) == 0 and np.ndim(z2) == 0:
        return float(values)
    return values


def bose_occupation(T: Temperature | float) -> float:
    T = _as_temperature(T)
    if T.is_zero:
        return 0.0
    return 1.0 / math.expm1(1.0 / T.value)


def thermal_entropy(T: Temperature | float) -> float:
    """(1 + N) ln(1 + N) - N ln N with N the Bose occupation."""
    occupation = bose_occupation(T)
    if occupation == 0.0:
        return 0.0
    return (1.0 + occupation) * math.log1p(occupation) - occupation * math.log(
        occupation
    )


def thermal_purity(T: Temperature | float) -> float:
    """Tr rho_T^2 = tanh(1 / 2T)."""
    T = _as_temperature(T)
    if T.is_zero:
        return 1.0
    return math.tanh(0.5 / T.value)


def spatial_distribution(r: Rapidity | float, z: ArrayLike):
    """Quark distribution rho(z, z) of the reduced ground state; width sqrt(cosh 2 eta)."""
    c2 = math.cosh(2.0 * as_rapidity(r).eta)
    zs = np.asarray(z, dtype=float)
    values = np.exp(-(zs**2) / c2) / math.sqrt(math.pi * c2)
    return float(values) if np.ndim(z) == 0 else values


def spatial_width(r: Rapidity | float) -> float:
    return math.sqrt(math.cosh(2.0 * as_rapidity(r).eta))
