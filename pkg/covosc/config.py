"""Numerical defaults.

Everything is in natural units (hbar = omega = c = k_B = 1).
"""

import os

from .errors import ConfigError

# Gauss-Hermite order per axis used by the oracles
DEFAULT_QUADRATURE_ORDER = 64
# The Fourier oracle integrates e^{i k a} e^{-a^2}; k reaches ~25 on the test grid
FOURIER_QUADRATURE_ORDER = 200
# Extra nodes used to check that a quadrature estimate has converged
CONVERGENCE_ORDER_STEP = 16

OVERLAP_TOLERANCE = 1e-10
OVERLAP_TOLERANCE_LARGE_ETA = 1e-8
LARGE_ETA = 3.0

SPECTRAL_TAIL_TOLERANCE = 1e-14
TRUNCATION_WARNING_THRESHOLD = 1e-10

# |eta| accepted by the library, and by scans / wave-function evaluators
MAX_RAPIDITY = 10.0
MAX_SCAN_RAPIDITY = 5.0
# Longest eigenvalue sequence a spectral sum may build
MAX_SPECTRAL_TERMS = 2_000_000
# Largest basis table (terms x points) a density kernel may evaluate
MAX_KERNEL_VALUES = 20_000_000

# Below this index phi_n uses n! directly, above it the log-domain recurrence
LOG_DOMAIN_THRESHOLD = 20

CSV_FLOAT_FORMAT = ".17g"

QUADRATURE_ORDER_ENV = "COVOSC_QUADRATURE_ORDER"


def quadrature_order() -> int:
    """Oracle quadrature order, honouring ``COVOSC_QUADRATURE_ORDER``."""
    raw = os.environ.get(QUADRATURE_ORDER_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_QUADRATURE_ORDER
    try:
        order = int(raw)
    except ValueError:
        raise ConfigError(QUADRATURE_ORDER_ENV, f"not an integer: {raw!r}") from None
    if order < 1:
        raise ConfigError(QUADRATURE_ORDER_ENV, f"must be positive, got {order}")
    return order


def overlap_tolerance(eta: float) -> float:
    """Tolerance for overlap oracles; squeezed integrands get a looser budget."""
    return OVERLAP_TOLERANCE if abs(eta) <= LARGE_ETA else OVERLAP_TOLERANCE_LARGE_ETA
