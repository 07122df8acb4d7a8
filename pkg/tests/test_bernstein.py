"""Derivative lower bounds and their asymptotic-precision witnesses."""

import math

import numpy as np
import pytest

from simplefrac.bernstein import (
    RootedPolynomial,
    asymptotic_ratios,
    check_corollary,
    corollary_min_a,
    random_rooted_polynomial,
    witness_first_kind,
    witness_ratio_empirical,
)
from simplefrac.errors import DomainError, TheoremRangeError


def test_shifted_cheb_degree_two_example():
    # P = T_2 - 7 = 2(x-2)(x+2): below the n >= 4 gate, so force
    poly = RootedPolynomial(a=2.0, cofactor_roots=(-2.0,), lead=2.0, force=True)
    rep = check_corollary(poly)
    assert rep.lhs_w == pytest.approx(2.0, abs=1e-10)  # ||4x sqrt(1-x^2)|| at 1/sqrt 2
    assert rep.rhs_w == pytest.approx(12.0 / math.sqrt(48.0), rel=1e-12)
    assert rep.min_abs_p == pytest.approx(6.0, abs=1e-12)
    assert rep.both_hold


def test_rooted_polynomial_gates():
    with pytest.raises(TheoremRangeError):
        RootedPolynomial(a=2.0, cofactor_roots=(-2.0,), lead=2.0)  # n = 2 < 4
    with pytest.raises(TheoremRangeError):
        RootedPolynomial(a=1.5, cofactor_roots=(-3.0, 2j, -2j))  # a below threshold
    with pytest.raises(DomainError):
        RootedPolynomial(a=3.0, cofactor_roots=(0.5, 2j, -2j))  # root on segment
    with pytest.raises(DomainError):
        RootedPolynomial(a=0.9, cofactor_roots=(-3.0,), force=True)  # a <= 1


def test_value_and_derivative_against_expansion():
    # P = 3 (x - 2)(x^2 + 1): compare against the expanded cubic
    poly = RootedPolynomial(a=2.0, cofactor_roots=(1j, -1j), lead=3.0, force=True)
    xs = np.linspace(-1.0, 1.0, 101)
    val, der = poly.value_and_derivative(xs)
    expanded = 3.0 * (xs**3 - 2.0 * xs**2 + xs - 2.0)
    expanded_der = 3.0 * (3.0 * xs**2 - 4.0 * xs + 1.0)
    assert np.max(np.abs(val - expanded)) < 1e-12
    assert np.max(np.abs(der - expanded_der)) < 1e-12


def test_first_witness_weighted_derivative_norm():
    # the shifted Chebyshev witness has weighted derivative norm exactly n
    rep = check_corollary(witness_first_kind(4, 3.0))
    assert rep.lhs_w == pytest.approx(4.0, abs=1e-9)


def test_asymptotic_ratio_example():
    r = asymptotic_ratios(2, 2.0, force=True)
    assert r.r1 == pytest.approx(math.sqrt(0.75), rel=1e-15)
    assert r.r2_lower is None  # undefined for n = 2
    poly = RootedPolynomial(a=2.0, cofactor_roots=(-2.0,), lead=2.0, force=True)
    rep = check_corollary(poly)
    assert rep.rhs_w / rep.lhs_w == pytest.approx(r.r1, rel=1e-10)


def test_asymptotic_ratio_gates():
    with pytest.raises(TheoremRangeError):
        asymptotic_ratios(3, 3.0)
    with pytest.raises(TheoremRangeError):
        asymptotic_ratios(4, 2.0)  # below corollary_min_a(4) = 2.2134
    assert corollary_min_a(4) == pytest.approx(math.sqrt(2.0) * 6.0**0.25, rel=1e-15)


def test_r1_strictly_increasing_then_both_monotone():
    r1s = [asymptotic_ratios(n, 3.0).r1 for n in range(4, 21)]
    assert all(b > a for a, b in zip(r1s, r1s[1:]))  # strict in {4..20}
    rs = [asymptotic_ratios(n, 3.0) for n in range(4, 31)]
    assert all(b.r1 >= a.r1 for a, b in zip(rs, rs[1:]))
    assert all(b.r2_lower >= a.r2_lower for a, b in zip(rs, rs[1:]))
    assert all(r.r1 <= 1.0 and r.r2_lower <= 1.0 for r in rs)
    assert rs[-1].r1 > 1.0 - 1e-6  # exponential approach


def test_witness_consistency_checks():
    # generic engine reproduces r1 for moderate degrees (root representation)
    for n in (4, 6, 8):
        rep = check_corollary(witness_first_kind(n, 3.0))
        r1 = asymptotic_ratios(n, 3.0).r1
        assert rep.rhs_w / rep.lhs_w == pytest.approx(r1, abs=1e-10)
    # closed-form route holds to machine precision at any degree
    for n in (4, 12, 30):
        assert witness_ratio_empirical(n, 3.0, 1) == pytest.approx(
            asymptotic_ratios(n, 3.0).r1, rel=1e-12
        )


def test_second_witness_unit_derivative_ratio():
    # measured unweighted ratio of the integrated witness approaches 1
    vals = [witness_ratio_empirical(n, 3.0, 2) for n in (4, 8, 16, 30)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert vals[0] > 0.9 and vals[-1] < 1.0


def test_random_admissible_instances_hold():
    rng = np.random.default_rng(7)
    for _ in range(60):
        n = int(rng.integers(4, 11))
        a = float(rng.choice([2.5, 3.0, 5.0]))
        rep = check_corollary(random_rooted_polynomial(n, a, rng))
        assert rep.both_hold
