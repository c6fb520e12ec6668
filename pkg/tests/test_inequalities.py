"""Bound and identity checks: frozen rational values plus structure.

Expected numbers for the unit-order cases are derived in-test from the
plain moment formula: with order one, unit power index, and zero weights
the integral of t^k over (0, x) is x^(k+1)/(k+1).
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from fracineq import (
    BoundedFunctionSpec,
    Function1D,
    OperatorParams,
    POLYA_ITEMS,
    RatioBoundedPair,
    YOUNG_DUAL_ITEMS,
    YOUNG_ITEMS_3,
    YOUNG_ITEMS_4,
    YoungExponents,
    classical_gruss_check,
    constant,
    function_family_sampler,
    gruss_check,
    lemma1_residual,
    lemma2_check,
    lemma3_residual,
    monomial,
    polya_szego_suite_check,
    ratio_bounded_pair,
    theorem2_check,
    young_suite_check,
)

RL = OperatorParams(alpha=1.0, beta=0.0, rho=1.0, eta=0.0, kappa=0.0, lower=0.0)
IDENT = BoundedFunctionSpec(f=monomial(1.0), m=0.0, M=1.0)
GENERIC = OperatorParams(alpha=0.8, beta=0.5, rho=2.0, eta=0.7, kappa=-0.4)


def _scale(r):
    return abs(r.lhs) + abs(r.rhs) + 1.0


def test_young_exponents():
    e = YoungExponents(2.0)
    assert e.q == 2.0
    e = YoungExponents(3.0)
    assert math.isclose(e.q, 1.5, rel_tol=1e-15)
    assert math.isclose(1.0 / e.p + 1.0 / e.q, 1.0, abs_tol=1e-12)
    with pytest.raises(ValueError):
        YoungExponents(3.0, 2.0)
    with pytest.raises(ValueError):
        YoungExponents(1.0)


def test_bounded_spec_validation():
    with pytest.raises(ValueError):
        BoundedFunctionSpec(f=constant(1.0), m=2.0, M=1.0)
    with pytest.raises(ValueError):
        RatioBoundedPair(
            f=constant(1.0), g=constant(1.0), m_ratio=0.0, M_ratio=1.0, g_floor=0.5
        )


def test_single_order_identity_unit_case():
    r = lemma1_residual(RL, IDENT, 1.0)
    assert math.isclose(r.lhs, 1.0 / 12.0, rel_tol=1e-12)
    assert abs(r.residual) <= 1e-10
    assert r.lambda_alpha == pytest.approx(1.0, rel=1e-12)
    assert r.variant == "identity"


def test_single_order_identity_constant_case():
    spec = BoundedFunctionSpec(f=constant(2.0), m=1.5, M=2.5)
    r = lemma1_residual(GENERIC, spec, 1.3)
    assert abs(r.lhs) <= 1e-12 * _scale(r)
    assert abs(r.residual) <= 1e-12 * _scale(r)


def test_single_order_identity_generic_scale():
    u = function_family_sampler(11, "polynomial", 3, 1.7)
    r = lemma1_residual(GENERIC, u, 1.7)
    assert abs(r.residual) <= 1e-8 * _scale(r)


def test_product_bound_unit_case():
    r = gruss_check(RL, IDENT, IDENT, 1.0, variant="quarter")
    assert math.isclose(r.lhs, 1.0 / 12.0, rel_tol=1e-12)
    assert math.isclose(r.rhs, 0.25, rel_tol=1e-12)
    assert math.isclose(r.margin, 1.0 / 6.0, rel_tol=1e-11)
    printed = gruss_check(RL, IDENT, IDENT, 1.0, variant="as_printed")
    assert math.isclose(printed.rhs, 4.0 * r.rhs, rel_tol=1e-15)
    assert printed.margin >= r.margin


def test_product_bound_constant_factor():
    c = BoundedFunctionSpec(f=constant(3.0), m=3.0, M=3.0)
    g = function_family_sampler(5, "trig_series", 3, 1.2)
    r = gruss_check(GENERIC, c, g, 1.2)
    assert abs(r.lhs) <= 1e-11 * _scale(r)
    assert r.margin >= -1e-12 * _scale(r)


def test_product_bound_margin_monotone_in_bounds():
    g = function_family_sampler(9, "polynomial", 3, 1.5)
    tight_spec = BoundedFunctionSpec(f=monomial(1.0), m=0.0, M=1.5)
    tight = gruss_check(GENERIC, tight_spec, g, 1.5)
    padded_spec = BoundedFunctionSpec(f=monomial(1.0), m=-1.0, M=2.5)
    padded = gruss_check(GENERIC, padded_spec, g, 1.5)
    assert padded.rhs >= tight.rhs
    assert padded.margin >= tight.margin


def test_classical_product_bound():
    r = classical_gruss_check(IDENT, IDENT, 0.0, 1.0)
    assert math.isclose(r.lhs, 1.0 / 12.0, rel_tol=1e-11)
    assert math.isclose(r.rhs, 0.25, rel_tol=1e-12)
    assert abs(r.residual) <= 1e-10
    assert r.variant == "classical"

    f = BoundedFunctionSpec(f=Function1D(np.sin, label="sin"), m=-1.0, M=1.0)
    g = BoundedFunctionSpec(f=Function1D(np.cos, label="cos"), m=-1.0, M=1.0)
    r = classical_gruss_check(f, g, 0.0, math.pi)
    assert r.margin >= 0.0
    assert abs(r.residual) <= 1e-10


def test_two_order_cauchy_schwarz_equality():
    f = function_family_sampler(3, "polynomial", 2, 1.0)
    r = lemma2_check(GENERIC, GENERIC.alpha, f.f, f.f, 1.0)
    assert abs(r.margin) <= 1e-9 * max(abs(r.rhs), 1.0)
    assert r.margin >= -1e-12 * _scale(r)


def test_two_order_cauchy_schwarz_generic():
    f = function_family_sampler(21, "polynomial", 3, 1.4)
    g = function_family_sampler(22, "polynomial", 2, 1.4)
    r = lemma2_check(GENERIC, 1.9, f.f, g.f, 1.4)
    assert r.margin >= -1e-9 * abs(r.rhs)
    assert r.gamma == 1.9 and r.lambda_gamma is not None


def test_two_order_identity_reduces_to_single_order():
    u = function_family_sampler(31, "polynomial", 3, 1.2)
    single = lemma1_residual(GENERIC, u, 1.2)
    double = lemma3_residual(GENERIC, GENERIC.alpha, u, 1.2)
    assert math.isclose(double.lhs, 2.0 * single.lhs, rel_tol=1e-10)
    assert abs(double.residual) <= 1e-10 * _scale(double)


def test_two_order_identity_generic():
    u = function_family_sampler(32, "piecewise_linear", 5, 0.9)
    r = lemma3_residual(GENERIC, 1.9, u, 0.9)
    assert abs(r.residual) <= 1e-8 * _scale(r)
    assert r.variant == "identity"


def test_two_order_product_bound_collapses_at_equal_orders():
    f = function_family_sampler(41, "polynomial", 3, 1.1)
    g = function_family_sampler(42, "polynomial", 2, 1.1)
    single = gruss_check(GENERIC, f, g, 1.1)
    double = theorem2_check(GENERIC, GENERIC.alpha, f, g, 1.1)
    assert abs(double.lhs - 4.0 * single.lhs**2) <= 1e-10 * max(double.lhs, 1.0)
    assert double.margin >= -1e-9 * abs(double.rhs)


def test_two_order_product_bound_generic():
    f = function_family_sampler(51, "trig_series", 3, 2.0)
    g = function_family_sampler(52, "polynomial", 4, 2.0)
    for gamma in (0.7, 1.0, 1.9):
        r = theorem2_check(GENERIC, gamma, f, g, 2.0)
        assert r.margin >= -1e-9 * abs(r.rhs)


def test_young_first_group_frozen_case():
    # f(t)=t, g(t)=t^2, p=3: every term is a plain moment on (0,1)
    f, g = monomial(1.0), monomial(2.0)
    exps = YoungExponents(3.0)
    r = young_suite_check(RL, f, g, exps, 1.0, "3.3", variant="as_proved")
    lhs = Fraction(1, 4) * Fraction(1, 4) / 3 + Fraction(2, 5) * Fraction(1, 7) / Fraction(3, 2)
    rhs = Fraction(1, 6) * Fraction(1, 3)
    assert lhs - rhs == Fraction(17, 5040)
    assert math.isclose(r.margin, float(Fraction(17, 5040)), rel_tol=1e-11)
    assert r.margin >= -1e-9


def test_young_equality_at_constant_one():
    one = constant(1.0)
    exps = YoungExponents(2.0)
    for item in YOUNG_ITEMS_3 + YOUNG_ITEMS_4:
        r = young_suite_check(GENERIC, one, one, exps, 1.3, item)
        assert abs(r.margin) <= 1e-10 * _scale(r), item


def test_young_squared_pair_equality():
    f = function_family_sampler(61, "polynomial", 2, 1.0, positive=True)
    r = young_suite_check(RL, f.f, f.f, YoungExponents(2.0), 1.0, "3.2")
    assert abs(r.margin) <= 1e-10 * _scale(r)


def test_young_printed_forms_can_fail():
    """The stated versions of two items are falsified by simple data;
    the proved variants stay nonnegative on the same data."""
    lin = Function1D(lambda t: t + 0.1, label="t+0.1")
    r_printed = young_suite_check(RL, lin, lin, YoungExponents(3.0), 1.0, "3.3",
                                  variant="as_printed")
    r_proved = young_suite_check(RL, lin, lin, YoungExponents(3.0), 1.0, "3.3",
                                 variant="as_proved")
    assert r_printed.margin < -1e-6
    assert r_proved.margin >= -1e-12 * _scale(r_proved)

    steep = Function1D(lambda t: 10.0 * t + 0.1, label="10t+0.1")
    r_printed = young_suite_check(RL, steep, steep, YoungExponents(3.0), 1.0, "4.2",
                                  variant="as_printed")
    r_proved = young_suite_check(RL, steep, steep, YoungExponents(3.0), 1.0, "4.2",
                                 variant="as_proved")
    assert r_printed.margin < -1.0
    assert r_proved.margin > 1.0


def test_young_variant_bookkeeping():
    one = constant(1.0)
    r = young_suite_check(GENERIC, one, one, YoungExponents(2.0), 1.0, "3.1",
                          variant="as_proved")
    assert r.variant == "as_printed"  # single-form item: label the statement
    r = young_suite_check(GENERIC, one, one, YoungExponents(2.0), 1.0, "3.3",
                          variant="as_proved")
    assert r.variant == "as_proved"
    assert set(YOUNG_DUAL_ITEMS) == {"3.3", "4.2"}
    with pytest.raises(ValueError):
        young_suite_check(GENERIC, one, one, YoungExponents(2.0), 1.0, "9.9")


def test_young_rejects_sign_changing_functions():
    crossing = Function1D(lambda t: t - 0.5, label="t-1/2")
    with pytest.raises(ValueError):
        young_suite_check(RL, crossing, constant(1.0), YoungExponents(1.5), 1.0,
                          "3.1")


def test_ratio_bound_suite_frozen_case():
    # f(t)=t+1, g=1 on (0,1], order 1: certified ratio window [1, 2]
    pair = RatioBoundedPair(
        f=Function1D(lambda t: t + 1.0, label="t+1"),
        g=constant(1.0),
        m_ratio=1.0,
        M_ratio=2.0,
        g_floor=1.0,
    )
    r1 = polya_szego_suite_check(RL, pair, 1.0, "5.1")
    assert math.isclose(r1.margin, 19.0 / 96.0, rel_tol=1e-11)
    r3 = polya_szego_suite_check(RL, pair, 1.0, "5.3")
    assert math.isclose(r3.margin, 19.0 / 96.0, rel_tol=1e-11)
    r2 = polya_szego_suite_check(RL, pair, 1.0, "5.2")
    want = (3.0 - 2.0 * math.sqrt(2.0)) / (2.0 * math.sqrt(2.0)) * 1.5 - (
        math.sqrt(7.0 / 3.0) - 1.5
    )
    assert math.isclose(r2.margin, want, rel_tol=1e-10)
    for r in (r1, r2, r3):
        assert r.lhs >= -1e-12


def test_ratio_bound_suite_equality_at_proportional_pair():
    g = function_family_sampler(71, "polynomial", 3, 1.3, positive=True)
    f = Function1D(lambda t: 2.0 * g.f(t), label="2g")
    pair = RatioBoundedPair(f=f, g=g.f, m_ratio=2.0, M_ratio=2.0, g_floor=g.m)
    for item in POLYA_ITEMS:
        r = polya_szego_suite_check(GENERIC, pair, 1.3, item)
        assert abs(r.margin) <= 1e-10 * _scale(r), item


def test_ratio_bound_suite_random_pairs():
    for seed in (1, 2, 3, 4):
        pair = ratio_bounded_pair(seed, 1.5)
        for item in POLYA_ITEMS:
            r = polya_szego_suite_check(GENERIC, pair, 1.5, item)
            assert r.margin >= -1e-9 * _scale(r), (seed, item)


def test_inequality_checks_reject_negative_eta():
    p = OperatorParams(alpha=1.0, eta=-0.5)
    with pytest.raises(ValueError):
        gruss_check(p, IDENT, IDENT, 1.0)
    with pytest.raises(ValueError):
        lemma2_check(p, 1.2, monomial(1.0), monomial(1.0), 1.0)


def test_sampler_determinism_and_certification():
    a = function_family_sampler(7, "trig_series", 3, 1.0)
    b = function_family_sampler(7, "trig_series", 3, 1.0)
    ts = np.linspace(1e-9, 1.0, 40961)
    va, vb = a.f(ts), b.f(ts)
    assert np.array_equal(va, vb)
    assert a.m <= va.min() and va.max() <= a.M
    assert a.m < a.M

    const = function_family_sampler(0, "polynomial", 0, 1.0)
    vals = const.f(ts)
    assert np.allclose(vals, vals[0], rtol=0.0, atol=1e-15)

    pos = function_family_sampler(13, "piecewise_linear", 6, 2.0, positive=True)
    vp = pos.f(np.linspace(1e-9, 2.0, 40961))
    assert vp.min() >= pos.m > 0.0

    with pytest.raises(ValueError):
        function_family_sampler(1, "splines", 3, 1.0)


def test_ratio_pair_certification():
    pair = ratio_bounded_pair(19, 2.0, g_floor=0.5)
    ts = np.linspace(1e-9, 2.0, 40961)
    gv = pair.g(ts)
    assert gv.min() >= 0.5 - 1e-12
    ratio = pair.f(ts) / gv
    assert pair.m_ratio <= ratio.min() + 1e-12
    assert ratio.max() <= pair.M_ratio + 1e-12
    assert pair.m_ratio > 0.0
