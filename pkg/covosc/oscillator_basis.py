"""Hermite-Gaussian oscillator eigenfunctions and Gauss-Hermite quadrature.

The quadrature helpers here are the independent oracle every other module is
checked against: integrands are evaluated at Gauss-Hermite nodes with the
``exp(-x^2)`` weight divided out analytically.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from numpy.typing import ArrayLike
from scipy import integrate, ndimage
from scipy.special import gammaln, roots_hermite

from . import config
from .errors import DomainError, QuadratureError

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
LOG_PI = math.log(math.pi)

# Rescale the recurrence whenever it exceeds this magnitude
_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)

# 5-point central second difference, divided by h^2 at use
_SECOND_DIFFERENCE = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def check_index(n: int, name: str = "n") -> int:
    """Validate an excitation number and return it as a plain int."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"{name} must be an integer, got {n!r}")
    if n < 0:
        raise DomainError(f"{name} must be non-negative, got {n}")
    return int(n)


def _scalar_or_array(values: np.ndarray, like: ArrayLike):
    if np.ndim(like) == 0:
        return float(values)
    return values


def log_factorial(n: int) -> float:
    return float(gammaln(check_index(n) + 1))


def log_binomial(n: int, k: int) -> float:
    """ln C(n, k), finite for every 0 <= k <= n."""
    n = check_index(n)
    k = check_index(k, "k")
    if k > n:
        raise DomainError(f"k={k} exceeds n={n}")
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


def binomial(n: int, k: int) -> float:
    if n <= config.LOG_DOMAIN_THRESHOLD:
        check_index(k, "k")
        return float(math.comb(check_index(n), k))
    return math.exp(log_binomial(n, k))


def hermite(n: int, x: ArrayLike):
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence.

    H_{n+1} = 2x H_n - 2n H_{n-1}. Exact in floating point for moderate n;
    use :func:`phi_table` for high orders.
    """
    n = check_index(n)
    xs = np.asarray(x, dtype=float)
    prev = np.ones_like(xs)
    if n == 0:
        return _scalar_or_array(prev, x)
    cur = 2.0 * xs
    for k in range(1, n):
        prev, cur = cur, 2.0 * xs * cur - 2.0 * k * prev
    return _scalar_or_array(cur, x)


def phi_table(n_max: int, x: ArrayLike) -> np.ndarray:
    """All normalized eigenfunctions phi_0..phi_{n_max} evaluated at ``x``.

    Uses the recurrence of the normalized functions
    h_{k+1} = sqrt(2/(k+1)) x h_k - sqrt(k/(k+1)) h_{k-1}
    carried with a running log-scale, so neither the factorials nor the
    Gaussian factor overflow. Returns an array of shape ``(n_max + 1,) + x.shape``.
    """
    n_max = check_index(n_max, "n_max")
    xs = np.asarray(x, dtype=float)
    table = np.empty((n_max + 1,) + xs.shape)
    log_scale = -0.5 * xs * xs - 0.25 * LOG_PI
    prev = np.zeros_like(xs)
    cur = np.ones_like(xs)
    table[0] = np.exp(log_scale)
    for k in range(n_max):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * xs * cur - math.sqrt(
            k / (k + 1)
        ) * prev
        big = np.abs(cur) > _RESCALE
        if np.any(big):
            prev = np.where(big, prev / _RESCALE, prev)
            cur = np.where(big, cur / _RESCALE, cur)
            log_scale = np.where(big, log_scale + _LOG_RESCALE, log_scale)
        table[k + 1] = cur * np.exp(log_scale)
    return table


def phi(n: int, x: ArrayLike):
    """Normalized oscillator eigenfunction (1/(sqrt(pi) n! 2^n))^{1/2} H_n(x) e^{-x^2/2}."""
    n = check_index(n)
    xs = np.asarray(x, dtype=float)
    if n <= config.LOG_DOMAIN_THRESHOLD:
        norm = 1.0 / math.sqrt(math.sqrt(math.pi) * math.factorial(n) * 2.0**n)
        values = norm * hermite(n, xs) * np.exp(-0.5 * xs * xs)
    else:
        values = phi_table(n, xs)[n]
    return _scalar_or_array(values, x)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Hermite nodes and weights for the weight function exp(-x^2)."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise DomainError(f"quadrature order must be positive, got {self.order}")
        if not (len(self.nodes) == len(self.weights) == self.order):
            raise DomainError(
                f"rule of order {self.order} has {len(self.nodes)} nodes "
                f"and {len(self.weights)} weights"
            )
        if np.any(self.weights < 0):
            raise DomainError("quadrature weights must be non-negative")

    @cached_property
    def scaled_weights(self) -> np.ndarray:
        """w_i exp(x_i^2): weights for integrating f(x) rather than f(x) e^{-x^2}."""
        with np.errstate(divide="ignore"):
            return np.exp(np.log(self.weights) + self.nodes**2)


@lru_cache(maxsize=32)
def gauss_hermite(order: int) -> QuadratureRule:
    if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
        raise DomainError(f"quadrature order must be an integer, got {order!r}")
    if order < 1:
        raise DomainError(f"quadrature order must be positive, got {order}")
    nodes, weights = roots_hermite(int(order))
    nodes = np.array(nodes, dtype=float)
    weights = np.array(weights, dtype=float)
    if order % 2 == 1:
        nodes[order // 2] = 0.0
    nodes.setflags(write=False)
    weights.setflags(write=False)
    logger.debug("built Gauss-Hermite rule of order %d", order)
    return QuadratureRule(nodes=nodes, weights=weights, order=int(order))


def _raise_on_non_finite(values: np.ndarray, *coords: np.ndarray) -> None:
    bad = ~np.isfinite(values)
    if np.any(bad):
        index = tuple(np.argwhere(bad)[0])
        node = tuple(float(c[index]) for c in coords)
        raise QuadratureError(node, float(values[index]))


def integrate_1d(
    f: Callable[[np.ndarray], ArrayLike],
    rule: QuadratureRule | None = None,
    scale: float = 1.0,
) -> float:
    """Estimate the integral of f over the real line.

    Nodes are stretched by ``scale``; choose it so that f/exp(-(x/scale)^2)
    is close to a polynomial.
    """
    rule = rule or gauss_hermite(config.quadrature_order())
    x = scale * rule.nodes
    values = np.asarray(f(x), dtype=float)
    _raise_on_non_finite(values, x)
    return float(scale * np.dot(rule.scaled_weights, values))


def integrate_2d(
    field: Callable[[np.ndarray, np.ndarray], ArrayLike],
    rule: QuadratureRule | None = None,
    *,
    scales: tuple[float, float] = (1.0, 1.0),
    light_cone: bool = False,
) -> float:
    """Tensor-product Gauss-Hermite estimate of the integral of field(z, t) dz dt.

    With ``light_cone`` the rule is laid along u = (z+t)/sqrt2 and
    v = (z-t)/sqrt2 and stretched by ``scales`` = (s_u, s_v); otherwise along
    z and t. The Jacobian of the rotation is one.
    """
    rule = rule or gauss_hermite(config.quadrature_order())
    a, b = np.meshgrid(scales[0] * rule.nodes, scales[1] * rule.nodes, indexing="ij")
    if light_cone:
        z, t = (a + b) / SQRT2, (a - b) / SQRT2
    else:
        z, t = a, b
    values = np.asarray(field(z, t), dtype=float)
    _raise_on_non_finite(values, z, t)
    weights = np.outer(rule.scaled_weights, rule.scaled_weights)
    return float(scales[0] * scales[1] * np.sum(weights * values))


def light_cone_scales(*etas: float) -> tuple[float, float]:
    """Node stretches (s_u, s_v) matching a product of squeezed Gaussians.

    Each factor contributes exp(-(e^{-2 eta} u^2 + e^{2 eta} v^2) / 2). With
    these stretches the remaining integrand is a polynomial in the nodes, which
    Gauss-Hermite integrates exactly.
    """
    if not etas:
        raise DomainError("at least one rapidity is required")
    alpha_u = 0.5 * sum(math.exp(-2.0 * eta) for eta in etas)
    alpha_v = 0.5 * sum(math.exp(2.0 * eta) for eta in etas)
    return 1.0 / math.sqrt(alpha_u), 1.0 / math.sqrt(alpha_v)


def overlap_1d(m: int, n: int, rule: QuadratureRule | None = None) -> float:
    """Quadrature value of the integral of phi_m phi_n; equals the Kronecker delta."""
    m = check_index(m, "m")
    n = check_index(n)
    if rule is None:
        rule = gauss_hermite(max(config.quadrature_order(), (m + n) // 2 + 2))
    return integrate_1d(lambda x: phi(m, x) * phi(n, x), rule)


@dataclass(frozen=True, eq=False)
class SampledField2D:
    """A function sampled on a uniform rectangular (z, t) grid.

    Used by the finite-difference and partial-integral checks, where the
    Gauss-Hermite oracle does not apply.
    """

    values: np.ndarray
    z_min: float
    z_max: float
    t_min: float
    t_max: float

    def __post_init__(self):
        bounds = (self.z_min, self.z_max, self.t_min, self.t_max)
        if not all(math.isfinite(b) for b in bounds):
            raise DomainError(f"grid bounds must be finite, got {bounds}")
        if self.z_min >= self.z_max or self.t_min >= self.t_max:
            raise DomainError(f"grid bounds must be increasing, got {bounds}")
        if self.values.ndim != 2 or min(self.values.shape) < 2:
            raise DomainError(f"need at least a 2x2 grid, got shape {self.values.shape}")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("sampled field contains non-finite values")

    @classmethod
    def from_function(
        cls,
        f: Callable[[np.ndarray, np.ndarray], ArrayLike],
        z_range: tuple[float, float],
        t_range: tuple[float, float],
        nz: int,
        nt: int,
    ) -> SampledField2D:
        if nz < 2 or nt < 2:
            raise DomainError(f"grid sizes must be >= 2, got nz={nz}, nt={nt}")
        z = np.linspace(z_range[0], z_range[1], nz)
        t = np.linspace(t_range[0], t_range[1], nt)
        zz, tt = np.meshgrid(z, t, indexing="ij")
        values = np.asarray(f(zz, tt), dtype=float)
        return cls(values, z_range[0], z_range[1], t_range[0], t_range[1])

    @property
    def nz(self) -> int:
        return self.values.shape[0]

    @property
    def nt(self) -> int:
        return self.values.shape[1]

    @property
    def z(self) -> np.ndarray:
        return np.linspace(self.z_min, self.z_max, self.nz)

    @property
    def t(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.nt)

    @property
    def dz(self) -> float:
        return (self.z_max - self.z_min) / (self.nz - 1)

    @property
    def dt(self) -> float:
        return (self.t_max - self.t_min) / (self.nt - 1)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.z, self.t, indexing="ij")

    def integrate(self) -> float:
        """Composite Simpson estimate over the sampled rectangle."""
        inner = integrate.simpson(self.values, x=self.t, axis=1)
        return float(integrate.simpson(inner, x=self.z))

    def second_derivative(self, axis: int) -> np.ndarray:
        """Fourth-order central second difference along ``axis`` (0 = z, 1 = t).

        The two outermost rows on each side are not meaningful; use
        :meth:`interior` to drop them.
        """
        step = self.dz if axis == 0 else self.dt
        return ndimage.correlate1d(
            self.values, _SECOND_DIFFERENCE, axis=axis, mode="nearest"
        ) / (step * step)

    @staticmethod
    def interior(array: np.ndarray, margin: int = 2) -> np.ndarray:
        return array[margin:-margin, margin:-margin]
