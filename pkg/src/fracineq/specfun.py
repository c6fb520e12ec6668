"""Logarithmic gamma and beta helpers used by every numeric layer.

Everything works in log space so that ratios of gamma values stay finite
for the parameter magnitudes the operators produce (arguments up to ~1e3,
ratios that would overflow long before that in linear space).
"""

from __future__ import annotations

import math


def log_gamma(z):
    """Natural log of the gamma function for real z > 0.

    Parameters
    ----------
    z : float
        Strictly positive argument. Nonpositive values and nonfinite
        values are rejected; the reflection formula is out of scope.

    Returns
    -------
    float
        ln Gamma(z).
    """
    z = float(z)
    if not math.isfinite(z):
        raise ValueError(f"log_gamma argument must be finite, got {z!r}")
    if z <= 0.0:
        raise ValueError(f"log_gamma requires z > 0, got {z!r}")
    return math.lgamma(z)


def log_beta(a, b):
    """Natural log of the Euler beta function B(a, b), a > 0 and b > 0."""
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def beta(a, b):
    """Euler beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)."""
    return math.exp(log_beta(a, b))
