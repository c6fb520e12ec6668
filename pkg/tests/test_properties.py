"""Property-based invariants over randomized inputs."""

import math

import numpy as np
from hypothesis import given, settings, strategies as st

from fracineq import (
    BoundedFunctionSpec,
    OperatorParams,
    Function1D,
    beta,
    function_family_sampler,
    gauss_jacobi_rule,
    gruss_check,
    left_integral,
    log_gamma,
)

finite = dict(allow_nan=False, allow_infinity=False)


@given(st.floats(min_value=0.1, max_value=10.0, **finite))
@settings(max_examples=300, deadline=None)
def test_log_gamma_recurrence(z):
    assert abs(log_gamma(z + 1.0) - log_gamma(z) - math.log(z)) <= 1e-12


@given(
    st.floats(min_value=0.2, max_value=8.0, **finite),
    st.floats(min_value=0.2, max_value=8.0, **finite),
)
@settings(max_examples=200, deadline=None)
def test_beta_symmetry(a, b):
    x, y = beta(a, b), beta(b, a)
    assert abs(x - y) <= 1e-14 * abs(x)


@given(
    st.integers(min_value=1, max_value=24),
    st.floats(min_value=-0.9, max_value=3.0, **finite),
    st.floats(min_value=-0.9, max_value=3.0, **finite),
)
@settings(max_examples=60, deadline=None)
def test_rule_invariants(n, p, q):
    rule = gauss_jacobi_rule(n, p, q)
    assert rule.order == n
    assert np.all(rule.nodes > 0.0) and np.all(rule.nodes < 1.0)
    assert np.all(np.diff(rule.nodes) > 0.0)
    assert np.all(rule.weights > 0.0)
    mass = float(np.sum(rule.weights))
    want = math.exp(math.lgamma(q + 1.0) + math.lgamma(p + 1.0)
                    - math.lgamma(p + q + 2.0))
    assert abs(mass - want) <= 1e-12 * want


@given(
    st.lists(st.floats(min_value=0.0, max_value=3.0, **finite), min_size=1,
             max_size=5),
    st.floats(min_value=0.3, max_value=2.0, **finite),
    st.floats(min_value=0.3, max_value=2.5, **finite),
)
@settings(max_examples=40, deadline=None)
def test_nonnegative_integrand_nonnegative_integral(coeffs, alpha, x):
    params = OperatorParams(alpha=alpha, beta=0.4, rho=1.5, eta=0.5, kappa=-0.3)
    fn = Function1D(
        lambda t: np.polynomial.polynomial.polyval(np.asarray(t, dtype=float),
                                                   coeffs),
        label="nonneg-poly",
    )
    assert left_integral(params, fn, x) >= 0.0


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=30, deadline=None)
def test_sampler_is_a_pure_function_of_seed(seed):
    a = function_family_sampler(seed, "polynomial", 3, 1.0)
    b = function_family_sampler(seed, "polynomial", 3, 1.0)
    ts = np.linspace(0.0, 1.0, 257)
    assert np.array_equal(a.f(ts), b.f(ts))
    assert (a.m, a.M) == (b.m, b.M)
    vals = a.f(ts)
    assert a.m <= vals.min() and vals.max() <= a.M


@given(st.integers(min_value=0, max_value=500), st.floats(min_value=0.1,
                                                          max_value=1.0, **finite))
@settings(max_examples=25, deadline=None)
def test_widening_the_stated_constant_never_shrinks_margin(seed, pad):
    params = OperatorParams(alpha=1.1, beta=0.2, rho=1.3, eta=0.4, kappa=0.5)
    f = function_family_sampler(2 * seed, "polynomial", 2, 1.2)
    g = function_family_sampler(2 * seed + 1, "trig_series", 2, 1.2)
    wide = BoundedFunctionSpec(f=f.f, m=f.m - pad, M=f.M + pad)
    tight_r = gruss_check(params, f, g, 1.2)
    wide_r = gruss_check(params, wide, g, 1.2)
    assert wide_r.margin >= tight_r.margin
    printed = gruss_check(params, f, g, 1.2, variant="as_printed")
    assert printed.margin >= tight_r.margin
