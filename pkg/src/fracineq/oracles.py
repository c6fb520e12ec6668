"""Closed-form values the numeric operators are checked against.

Every formula here is evaluated in log space from gamma-function values
only; no quadrature is involved, so agreement with the operator module is
a genuine two-route check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .operators import Function1D, monomial
from .specfun import log_gamma


@dataclass(frozen=True)
class MonomialSpec:
    """A power function coefficient * t^sigma used as a test input."""

    sigma: float
    coefficient: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and math.isfinite(self.coefficient)):
            raise ValueError(f"monomial spec must be finite, got {self}")

    def as_function(self) -> Function1D:
        return monomial(self.sigma, self.coefficient)


def monomial_integral(params, sigma, x):
    """Closed form of the left-sided operator applied to t^sigma.

    Valid for lower = 0 and sigma > -rho*(eta+1); returns
    rho^(-beta) x^(kappa + rho*(eta+alpha) + sigma)
    * Gamma(eta + sigma/rho + 1) / Gamma(eta + alpha + sigma/rho + 1).
    """
    x = float(x)
    sigma = float(sigma)
    if params.lower != 0.0:
        raise ValueError("closed form requires a zero lower terminal")
    if not (math.isfinite(x) and x > 0.0):
        raise ValueError(f"x must be positive and finite, got {x!r}")
    if sigma <= -params.rho * (params.eta + 1.0):
        raise ValueError(
            f"sigma must exceed {-params.rho * (params.eta + 1.0)} "
            f"for a convergent integral, got {sigma}"
        )
    shift = params.eta + sigma / params.rho + 1.0
    lg = (
        -params.beta * math.log(params.rho)
        + (params.kappa + params.rho * (params.eta + params.alpha) + sigma)
        * math.log(x)
        + log_gamma(shift)
        - log_gamma(shift + params.alpha)
    )
    return math.exp(lg)


def rl_monomial(alpha, sigma, x):
    """Classical fractional integral of t^sigma of order alpha at x.

    Gamma(sigma+1)/Gamma(sigma+alpha+1) * x^(sigma+alpha); needs
    alpha > 0, sigma > -1, x > 0.
    """
    alpha = float(alpha)
    sigma = float(sigma)
    x = float(x)
    if alpha <= 0.0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    if sigma <= -1.0:
        raise ValueError(f"sigma must exceed -1, got {sigma!r}")
    if not (math.isfinite(x) and x > 0.0):
        raise ValueError(f"x must be positive and finite, got {x!r}")
    return math.exp(
        log_gamma(sigma + 1.0)
        - log_gamma(sigma + alpha + 1.0)
        + (sigma + alpha) * math.log(x)
    )


def hadamard_log_monomial(alpha, nu, x):
    """Hadamard-type integral of (ln t)^nu from 1 to x, order alpha.

    Gamma(nu+1)/Gamma(nu+alpha+1) * (ln x)^(nu+alpha); needs x > 1,
    nu > -1. This is the rho -> 0+ limit target for the limit checks.
    """
    alpha = float(alpha)
    nu = float(nu)
    x = float(x)
    if alpha <= 0.0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    if nu <= -1.0:
        raise ValueError(f"nu must exceed -1, got {nu!r}")
    if not (math.isfinite(x) and x > 1.0):
        raise ValueError(f"x must exceed 1, got {x!r}")
    return math.exp(
        log_gamma(nu + 1.0)
        - log_gamma(nu + alpha + 1.0)
        + (nu + alpha) * math.log(math.log(x))
    )
