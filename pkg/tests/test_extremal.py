"""Extremal fractions: constructions, norms, alternance, brackets."""

import math

import numpy as np
import pytest

from simplefrac.cheb import ChebKind, EllipseParam, PointLocation, ellipse_classify, eval_cheb
from simplefrac.errors import DomainError, EvaluationError, TheoremRangeError
from simplefrac.extremal import (
    FixedPoleClass,
    LogDerivative,
    alternance_points_weighted,
    build_candidate_unweighted,
    build_extremal_weighted,
    dvp_bracket,
    eval_ld,
    extremal_weighted_norm,
    lambda_bounds,
    sup_norm,
    verify_pole_annulus,
    weighted_sup_norm,
)

T = ChebKind.FIRST_KIND


def tn_int(n, a):
    """Exact integer/float recurrence oracle for T_n at exact arguments."""
    prev, cur = 1, a
    if n == 0:
        return prev
    for _ in range(n - 1):
        cur, prev = 2 * a * cur - prev, cur
    return cur


# ---------------------------------------------------------------- builds

def test_build_weighted_degree_one():
    rho = build_extremal_weighted(FixedPoleClass(1, 2.0))
    assert rho.poles == (complex(2.0, 0.0),)


def test_build_weighted_degree_two():
    rho = build_extremal_weighted(FixedPoleClass(2, 2.0))
    assert sorted(z.real for z in rho.poles) == [-2.0, 2.0]
    assert all(z.imag == 0.0 for z in rho.poles)
    # oracle: T_2(x) = T_2(2) = 7 means 2x^2 - 1 = 7, x = ±2
    assert set(np.round(np.roots([2.0, 0.0, -8.0]), 12)) == {2.0, -2.0}


def test_build_weighted_contains_fixed_pole_and_conjugate_closed():
    for n in (1, 2, 3, 5, 8, 11):
        rho = build_extremal_weighted(FixedPoleClass(n, 3.0))
        assert complex(3.0, 0.0) in rho.poles
        assert rho.degree == n
        assert sorted((z.conjugate().real, z.conjugate().imag) for z in rho.poles) == \
            sorted((z.real, z.imag) for z in rho.poles)


def test_build_weighted_theorem_gate():
    with pytest.raises(TheoremRangeError):
        build_extremal_weighted(FixedPoleClass(2, 1.2))
    rho = build_extremal_weighted(FixedPoleClass(2, 1.2), force=True)
    assert not rho.within_theorem_range
    with pytest.raises(DomainError):
        FixedPoleClass(2, 0.9)


def test_weighted_poles_on_ellipse():
    for n, a in [(3, 1.5), (6, 2.0), (9, 3.0), (12, 5.0)]:
        rho = build_extremal_weighted(FixedPoleClass(n, a), force=True)
        ea = EllipseParam(a)
        for z in rho.poles:
            c = ellipse_classify(ea, z, tol=1e-10)
            assert c.location is PointLocation.ON, (n, a, z, c.residual)


# ---------------------------------------------------------------- norms

def test_weighted_norm_degree_one_grid_oracle():
    # max of sqrt(1-x^2)/(2-x) by brute grid search
    xs = np.linspace(-1.0, 1.0, 2_000_001)
    grid_max = np.max(np.sqrt(1 - xs * xs) / (2.0 - xs))
    val = extremal_weighted_norm(FixedPoleClass(1, 2.0))
    assert val == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-15)
    assert val == pytest.approx(grid_max, rel=1e-10)


def test_weighted_norm_degree_two():
    val = extremal_weighted_norm(FixedPoleClass(2, 2.0))
    assert val == pytest.approx(2.0 / math.sqrt(48.0), rel=1e-15)
    est = weighted_sup_norm(build_extremal_weighted(FixedPoleClass(2, 2.0)))
    assert est.value == pytest.approx(val, rel=1e-12)


def test_weighted_norm_vanishes_for_large_pole():
    values = [extremal_weighted_norm(FixedPoleClass(1, a)) for a in (2.0, 10.0, 1e4, 1e8)]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] < 1e-7
    assert extremal_weighted_norm(FixedPoleClass(200, 500.0)) == 0.0  # log-domain tail


def test_sup_norm_examples():
    rho = LogDerivative((2.0,))
    w = weighted_sup_norm(rho, 1e-10)
    assert w.value == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-10)
    assert w.location == pytest.approx(0.5, abs=1e-6)
    assert w.weighted
    u = sup_norm(rho, 1e-10)
    assert u.value == pytest.approx(1.0, abs=1e-12)
    assert u.location == 1.0
    assert not u.weighted


def test_sup_norm_rejects_pole_on_segment():
    with pytest.raises(DomainError):
        sup_norm(LogDerivative((0.5,)))
    with pytest.raises(DomainError):
        weighted_sup_norm(LogDerivative((2.0,)), 0.0)


def test_sup_norm_unreachable_tolerance_carries_best():
    from simplefrac.errors import ToleranceNotMetError

    with pytest.raises(ToleranceNotMetError) as excinfo:
        weighted_sup_norm(LogDerivative((2.0,)), 1e-300)
    x, value = excinfo.value.best
    assert value == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-6)


# ---------------------------------------------------------------- alternance

def test_alternance_degree_one():
    rep, zeros = alternance_points_weighted(FixedPoleClass(1, 2.0))
    assert rep.points == pytest.approx([0.5], abs=1e-14)  # T_1(x) = 1/T_1(2) = 1/2
    assert abs(rep.values[0]) == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-14)
    assert zeros == pytest.approx([-1.0, 1.0])


def test_alternance_degree_two():
    rep, zeros = alternance_points_weighted(FixedPoleClass(2, 2.0))
    x = math.sqrt(4.0 / 7.0)  # roots of T_2 = 1/7
    assert rep.points == pytest.approx([-x, x], abs=1e-14)
    assert [abs(v) for v in rep.values] == pytest.approx([2.0 / math.sqrt(48.0)] * 2, abs=1e-12)
    assert rep.values[0] * rep.values[1] < 0.0
    assert rep.sign_pattern_ok
    assert zeros == pytest.approx([-1.0, 0.0, 1.0], abs=1e-15)


def test_equioscillation_across_grid():
    for n in (1, 3, 6, 9, 12):
        for a in (1.5, 2.0, 3.0, 5.0):
            cls = FixedPoleClass(n, a)
            rep, zeros = alternance_points_weighted(cls)
            level = extremal_weighted_norm(cls)
            assert len(rep.points) == n
            assert len(zeros) == n + 1
            assert rep.sign_pattern_ok
            for v in rep.values:
                assert abs(abs(v) - level) <= 1e-10


# ---------------------------------------------------------------- candidates

def test_candidate_4_3_quartic_oracle():
    # Q_4(3;x) = 0 reduces to 2x^4 - 3x^2 - 135 = 0, x^2 in {9, -7.5}
    disc = math.sqrt(9.0 + 4.0 * 2.0 * 135.0)
    assert disc == 33.0
    expected = {3.0, -3.0, complex(0.0, math.sqrt(7.5)), complex(0.0, -math.sqrt(7.5))}
    cand = build_candidate_unweighted(FixedPoleClass(4, 3.0))
    for z in cand.poles:
        assert min(abs(z - e) for e in expected) < 1e-12
    assert complex(3.0, 0.0) in cand.poles
    assert sorted((z.conjugate().real, z.conjugate().imag) for z in cand.poles) == \
        sorted((z.real, z.imag) for z in cand.poles)


def test_candidate_gates():
    with pytest.raises(TheoremRangeError):
        build_candidate_unweighted(FixedPoleClass(3, 3.0))
    with pytest.raises(TheoremRangeError):
        build_candidate_unweighted(FixedPoleClass(4, 1.2))


def test_candidate_residual_gate_across_grid():
    for n in range(4, 9):
        for a in (3.0, 5.0):
            cand = build_candidate_unweighted(FixedPoleClass(n, a))
            fa = cand.fa
            for z in cand.poles:
                fz = (
                    eval_cheb(T, n, z) / n
                    - eval_cheb(T, n - 2, z) / (n - 2)
                )
                q = 0.5 * (fz - fa)
                scale = max(1.0, abs(eval_cheb(T, n - 1, z)))
                assert abs(q) <= 1e-10 * scale


def test_lambda_bounds_4_3_integer_oracle():
    # T_4(3) = 577, T_2(3) = 17 by exact integer recurrence
    assert tn_int(4, 3) == 577 and tn_int(2, 3) == 17
    lb = lambda_bounds(FixedPoleClass(4, 3.0))
    assert lb.lower == pytest.approx(8.0 / 546.0, rel=1e-15)
    assert lb.upper == pytest.approx(8.0 / 540.0, rel=1e-15)
    assert lb.lower < lb.upper


def test_lambda_bounds_large_a():
    lb = lambda_bounds(FixedPoleClass(4, 1e4))
    assert 0.0 < lb.lower <= lb.upper < 1e-12


def test_pole_annulus_4_3():
    rep = verify_pole_annulus(FixedPoleClass(4, 3.0))
    assert rep.t == pytest.approx(3.0 * (3.0 * 2.0) ** -0.25, rel=1e-15)
    assert rep.all_in_closure_ea
    assert rep.all_outside_et
    assert rep.min_abs_pole == pytest.approx(math.sqrt(7.5), rel=1e-12)
    assert rep.min_abs_pole > 1.0
    # semi-minor of E_t below the imaginary pole modulus
    assert math.sqrt(rep.t**2 - 1.0) < math.sqrt(7.5)


def test_pole_annulus_degenerate_t():
    # a = 1.3 > 1 + 1/4 but t = 1.3 * 6^(-1/4) < 1: outside-check not applicable
    rep = verify_pole_annulus(FixedPoleClass(4, 1.3))
    assert rep.t < 1.0
    assert rep.all_outside_et is None
    assert rep.et_residuals is None


# ---------------------------------------------------------------- dvp bracket

def test_dvp_bracket_4_3():
    # lower = min_k |rho(a_k)| at a_k = cos(k pi/3) = {±1, ±1/2}; by hand
    # rho = 2 T_3 / (2x^4 - 3x^2 - 135 - ...): |rho(±1)| = 2/136, |rho(±1/2)| = 2/135.625
    br = dvp_bracket(FixedPoleClass(4, 3.0))
    assert br.lower == pytest.approx(1.0 / 68.0, rel=1e-12)
    lb = lambda_bounds(FixedPoleClass(4, 3.0))
    assert lb.lower * (1 - 1e-6) <= br.lower <= br.upper <= lb.upper * (1 + 1e-6)
    assert br.lower <= br.upper
    # grid oracle for the upper end
    cand = build_candidate_unweighted(FixedPoleClass(4, 3.0))
    xs = np.linspace(-1.0, 1.0, 200_001)
    grid_max = np.max(np.abs(cand.values_on(xs)))
    assert grid_max <= br.upper * (1 + 1e-9)
    assert br.upper == pytest.approx(grid_max, rel=1e-8)
    # weak-equivalence ratio reported against 2n/(T_n - T_{n-2})
    assert br.weak_equiv_ratio == pytest.approx(br.upper * (577 - 17) / 8.0, rel=1e-15)


def test_dvp_bracket_gates():
    with pytest.raises(TheoremRangeError):
        dvp_bracket(FixedPoleClass(3, 3.0))
    with pytest.raises(TheoremRangeError):
        dvp_bracket(FixedPoleClass(4, 1.5))  # below sqrt(2)*(3 sqrt n)^(1/n)


# ---------------------------------------------------------------- eval_ld

def test_eval_ld_examples():
    assert eval_ld(LogDerivative((2.0,)), 0.0) == -0.5
    assert eval_ld(LogDerivative((2.0, -2.0)), 0.0) == 0.0
    assert eval_ld(LogDerivative((1j, -1j)), 1.0) == 1.0  # 2*1/|1-i|^2


def test_eval_ld_pole_proximity_error():
    with pytest.raises(EvaluationError):
        eval_ld(LogDerivative((2.0,)), 2.0 + 5e-15)


def test_log_derivative_validation():
    with pytest.raises(DomainError):
        LogDerivative(())
    with pytest.raises(DomainError):
        LogDerivative((1j,))  # not conjugate-closed
    with pytest.raises(DomainError):
        LogDerivative((complex(1, 2), complex(1.5, -2)))


def test_representation_identity():
    # pole-sum (compensated) vs n U_{n-1} / (T_n - T_n(a)); binary64 pole
    # storage limits this to moderate T_n(a), see decisions ledger
    rng = np.random.default_rng(202)
    for n in (1, 2, 4, 6, 8):
        for a in (1.5, 2.0) + ((3.0,) if n <= 6 else ()):
            rho = build_extremal_weighted(FixedPoleClass(n, a), force=True)
            xs = rng.uniform(-0.999, 0.999, 200)
            rational = rho.values_on(xs)
            keep = np.abs(rational) >= 0.3 * rho.level
            for x, expect in zip(xs[keep], rational[keep]):
                got = eval_ld(rho, float(x))
                assert abs(got - expect) <= 1e-11 * abs(expect)


def test_local_optimality_small():
    rng = np.random.default_rng(5)
    cls = FixedPoleClass(4, 2.0)
    rho = build_extremal_weighted(cls)
    closed = extremal_weighted_norm(cls)
    pairs = sorted(set((z.real, abs(z.imag)) for z in rho.poles if z.imag > 0.0))
    for _ in range(60):
        delta = 10.0 ** rng.uniform(-3, -1)
        poles = [complex(2.0, 0.0), complex(-2.0 * (1 + delta * rng.uniform(-1, 1)), 0.0)]
        for u, v in pairs:
            z = complex(u * (1 + delta * rng.uniform(-1, 1)), v * (1 + delta * rng.uniform(-1, 1)))
            poles += [z, z.conjugate()]
        perturbed = LogDerivative(tuple(poles[: rho.degree]))
        assert weighted_sup_norm(perturbed).value >= closed - 1e-9


def test_scaling_covariance():
    # ||rho||_{[nu-mu, nu+mu]} = mu^{-1} ||rho(mu x + nu)||_{[-1,1]}
    base = LogDerivative((4.0, complex(0.5, 1.5), complex(0.5, -1.5)))
    xs = np.linspace(-1.0, 1.0, 400_001)
    for mu in (0.5, 2.0):
        for nu in (0.0, 1.0):
            ys = mu * xs + nu
            direct = np.max(np.abs(base.values_on(ys)))
            mapped = LogDerivative(tuple((z - nu) / mu for z in base.poles))
            assert sup_norm(mapped).value / mu == pytest.approx(direct, rel=1e-6)
