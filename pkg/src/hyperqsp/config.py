"""Runtime configuration shared by all modules."""

from __future__ import annotations

import math
import os

DEFAULT_BETA_MAX = 5.0
BETA_MAX_ENV = "HYPERQSP_BETA_MAX"

# Coefficient magnitudes below this fraction of the largest one are dropped
TRIM_TOL = 1e-13
PARITY_TOL = 1e-12


def beta_max() -> float:
    """Largest admissible boost strength; overridable through the environment."""
    raw = os.environ.get(BETA_MAX_ENV, "").strip()
    if not raw:
        return DEFAULT_BETA_MAX
    value = float(raw)
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{BETA_MAX_ENV} must be a positive finite number, got {raw!r}")
    return value


def x_max() -> float:
    return math.cosh(beta_max())


def auto_dps(n_boosts: int, beta: float) -> int:
    """Working decimal digits that keep absolute errors near 1e-20 for n boosts of strength beta.

    Matrix entries grow like exp(n*beta), so absolute cancellation needs about
    n*beta/ln(10) extra digits on top of the target accuracy.
    """
    growth = 2.0 * n_boosts * max(beta, 0.0) / math.log(10.0)
    return 20 + int(math.ceil(growth))
