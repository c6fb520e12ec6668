"""Weighted Gauss rules and the independent reference integrator.

The two integration routes come from different algorithm families on
purpose; several tests here pit them against each other.
"""

import math

import numpy as np
import pytest

from fracineq import (
    ConvergenceError,
    IntegrandEvaluationError,
    beta,
    gauss_jacobi_rule,
    integrate_weighted,
    reference_integrate,
)


def _beta_ref(a, b):
    # closed form independent of the package's specfun module
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def test_one_point_rule_is_midpoint():
    rule = gauss_jacobi_rule(1, 0.0, 0.0)
    assert rule.order == 1
    assert rule.nodes.shape == (1,)
    assert math.isclose(rule.nodes[0], 0.5, rel_tol=1e-15)
    assert math.isclose(rule.weights[0], 1.0, rel_tol=1e-15)


def test_two_point_legendre_rule():
    rule = gauss_jacobi_rule(2, 0.0, 0.0)
    lo = 0.5 - 0.5 / math.sqrt(3.0)
    hi = 0.5 + 0.5 / math.sqrt(3.0)
    assert np.allclose(rule.nodes, [lo, hi], rtol=1e-14, atol=0.0)
    assert np.allclose(rule.weights, [0.5, 0.5], rtol=1e-14, atol=0.0)


def test_weight_mass_is_beta():
    rule = gauss_jacobi_rule(4, -0.5, 1.5)
    mass = float(np.sum(rule.weights))
    assert math.isclose(mass, 1.1780972450961724, rel_tol=1e-12)
    assert math.isclose(mass, beta(2.5, 0.5), rel_tol=1e-12)
    for n in (1, 3, 8, 17):
        for p in (-0.7, 0.0, 2.3):
            for q in (-0.4, 0.0, 1.1):
                r = gauss_jacobi_rule(n, p, q)
                assert math.isclose(
                    float(np.sum(r.weights)), _beta_ref(q + 1.0, p + 1.0),
                    rel_tol=1e-12,
                )


def test_rule_node_and_weight_invariants():
    for n in (1, 2, 5, 16, 40):
        rule = gauss_jacobi_rule(n, -0.5, 0.7)
        assert rule.nodes.shape == (n,) and rule.weights.shape == (n,)
        assert np.all(rule.nodes > 0.0) and np.all(rule.nodes < 1.0)
        assert np.all(np.diff(rule.nodes) > 0.0)
        assert np.all(rule.weights > 0.0)


def test_polynomial_exactness_sweep():
    worst = 0.0
    for n in (2, 4, 8, 16):
        for p in (-0.5, 0.0, 1.3):
            for q in (0.0, 0.7, 2.0):
                rule = gauss_jacobi_rule(n, p, q)
                for k in range(2 * n):
                    got = integrate_weighted(rule, lambda u, k=k: u**k)
                    want = _beta_ref(q + 1.0 + k, p + 1.0)
                    worst = max(worst, abs(got - want) / want)
    assert worst <= 1e-11


def test_integrate_weighted_examples():
    assert math.isclose(
        integrate_weighted(gauss_jacobi_rule(1, 0.0, 0.0), lambda u: 1.0), 1.0,
        rel_tol=1e-15,
    )
    assert math.isclose(
        integrate_weighted(gauss_jacobi_rule(8, 0.0, 0.0), lambda u: u**5),
        1.0 / 6.0,
        rel_tol=1e-13,
    )
    assert math.isclose(
        integrate_weighted(gauss_jacobi_rule(8, -0.5, 0.0), lambda u: 1.0), 2.0,
        rel_tol=1e-13,
    )


def test_rule_domain_errors():
    with pytest.raises(ValueError):
        gauss_jacobi_rule(0, 0.0, 0.0)
    with pytest.raises(ValueError):
        gauss_jacobi_rule(4, -1.0, 0.0)
    with pytest.raises(ValueError):
        gauss_jacobi_rule(4, 0.0, -1.5)
    with pytest.raises(ValueError):
        gauss_jacobi_rule(2.5, 0.0, 0.0)
    with pytest.raises(ValueError):
        gauss_jacobi_rule(True, 0.0, 0.0)


def test_bad_integrand_reports_node():
    rule = gauss_jacobi_rule(6, 0.0, 0.0)
    with pytest.raises(IntegrandEvaluationError) as err:
        integrate_weighted(rule, lambda u: float("nan") if u > 0.5 else 1.0)
    assert 0.5 < err.value.node < 1.0


def test_reference_integrate_smooth():
    assert math.isclose(reference_integrate(lambda t: t, 0.0, 1.0, 1e-10), 0.5,
                        rel_tol=1e-12)
    assert math.isclose(
        reference_integrate(math.sin, 0.0, math.pi, 1e-12), 2.0, rel_tol=1e-11
    )


def test_reference_integrate_endpoint_singularities():
    got = reference_integrate(lambda t: (1.0 - t) ** -0.5, 0.0, 1.0, 1e-8)
    assert math.isclose(got, 2.0, rel_tol=1e-8)
    got = reference_integrate(lambda t: t**0.5 * (1.0 - t) ** -0.5, 0.0, 1.0, 1e-8)
    assert math.isclose(got, 1.5707963268, rel_tol=1e-8)
    assert math.isclose(got, math.pi / 2.0, rel_tol=1e-9)


def test_reference_integrate_zero_integral():
    got = reference_integrate(math.cos, 0.0, math.pi, 1e-10)
    assert abs(got) <= 1e-12


def test_reference_integrate_convergence_error():
    # effectively noise at every sampled resolution
    def jagged(t):
        return math.sin(1.0e6 * t) * math.sin(9.37e5 * t + 0.4)

    with pytest.raises(ConvergenceError) as err:
        reference_integrate(jagged, 0.0, 1.0, 1e-12)
    assert math.isfinite(err.value.estimate)
    assert err.value.error_estimate > 0.0


def test_cross_oracle_reference_vs_weighted():
    """Same integral, two algorithm families, tight agreement."""
    rng = np.random.default_rng(42)
    for _ in range(50):
        coeffs = rng.normal(size=4)
        freq = float(rng.uniform(0.5, 3.0))
        p = float(rng.uniform(-0.6, 1.5))
        q = float(rng.uniform(-0.6, 1.5))

        def smooth(u, c=coeffs, w=freq):
            return c[0] + c[1] * u + c[2] * math.cos(w * u) + c[3] * u * u

        rule = gauss_jacobi_rule(48, p, q)
        via_rule = integrate_weighted(rule, smooth)
        via_ref = reference_integrate(
            lambda u: u**q * (1.0 - u) ** p * smooth(u), 0.0, 1.0, 1e-10
        )
        scale = max(1.0, abs(via_rule))
        assert abs(via_rule - via_ref) <= max(1e-9, 1e-9 * scale)
