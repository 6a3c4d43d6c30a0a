"""Positivity-class engine: base ODE, boundary limits, integral tests.

Constant coefficients have closed forms (y = sin(sqrt(c) x)/sqrt(c)), so
most oracles here are classical identities rather than frozen numbers.
"""

import math

import numpy as np
import pytest

from gftkit import (
    QFunction,
    check_palpha,
    constant_solver,
    integral_criterion,
    integrate_ivp,
    integrate_q,
    sharpness_construct,
)
from gftkit.errors import (
    ExtrapolationDiverged,
    NonnegativityViolated,
    QuadratureFailed,
    TargetOutOfRange,
)


# -- QFunction construction ---------------------------------------------------


def test_constant_and_expression_agree():
    a = QFunction.constant(2.5)
    b = QFunction.from_expression("2.5 + 0*x")
    xs = np.linspace(0, 0.99, 11)
    assert np.allclose(a(xs), b(xs))
    assert a.kind == "constant" and b.kind == "expression"


def test_samples_interpolate_linearly():
    q = QFunction.from_samples([0.0, 0.5, 1.0], [0.0, 1.0, 0.0])
    assert q(0.25) == 0.5
    assert q.kind == "samples"
    with pytest.raises(ValueError):
        QFunction.from_samples([0.0, 0.5, 0.5], [0.0, 1.0, 0.0])


def test_nonnegativity_is_enforced():
    with pytest.raises(NonnegativityViolated):
        QFunction.constant(-1.0)
    with pytest.raises(NonnegativityViolated):
        QFunction.from_samples([0.0, 1.0], [0.5, -0.5])
    q = QFunction.from_expression("x - 0.5")
    with pytest.raises(NonnegativityViolated):
        q(0.2)
    # roundoff-level dips clamp instead of raising
    tiny = QFunction.from_expression("0 - 0.0000000000001*x")
    assert tiny(1.0) == 0.0


def test_expression_variable_must_be_x():
    with pytest.raises(ValueError):
        QFunction.from_expression(__import__("gftkit").parse("z^2"))


# -- base solution ------------------------------------------------------------


def test_free_equation_solution_is_the_identity():
    sol = integrate_ivp(QFunction.constant(0.0))
    assert np.max(np.abs(sol.y - sol.nodes)) <= 1e-10
    assert np.max(np.abs(sol.yp - 1.0)) <= 1e-10


@pytest.mark.parametrize("c", [0.5, 4.0, 16.0])
def test_constant_coefficient_closed_form(c):
    sol = integrate_ivp(QFunction.constant(c))
    rc = math.sqrt(c)
    assert np.max(np.abs(sol.y - np.sin(rc * sol.nodes) / rc)) <= 1e-8
    assert np.max(np.abs(sol.yp - np.cos(rc * sol.nodes))) <= 1e-8


def test_dense_output_and_log_slope():
    sol = integrate_ivp(QFunction.constant(4.0))
    for r in (0.9, 0.99):
        y, yp = sol.at(r)
        assert y == pytest.approx(math.sin(2 * r) / 2, abs=1e-10)
        assert sol.log_slope(r) == pytest.approx(2 / math.tan(2 * r), abs=1e-8)
    assert sol.nodes[0] == 0.0 and sol.y[0] == 0.0 and sol.yp[0] == 1.0
    assert sol.nodes[-1] == pytest.approx(1.0 - sol.eps_end, abs=1e-15)


# -- membership verdicts --------------------------------------------------------


def test_free_weight_has_limit_one():
    v = check_palpha(QFunction.constant(0.0), 0.5)
    assert v.member and v.positive_on_01
    assert abs(v.limit_estimate - 1.0) <= 1e-9
    assert v.first_zero is None


def test_moderate_constant_limit_matches_cotangent():
    # y'/y -> 2 cot 2 < 0: positive solution but negative boundary slope
    v = check_palpha(QFunction.constant(4.0), 0.0)
    assert v.positive_on_01 and not v.member
    assert v.limit_estimate == pytest.approx(2.0 / math.tan(2.0), abs=1e-8)


def test_interior_zero_is_found():
    v = check_palpha(QFunction.constant(16.0), 0.0)
    assert not v.positive_on_01 and not v.member
    assert v.first_zero == pytest.approx(math.pi / 4.0, abs=1e-9)
    assert math.isnan(v.limit_estimate)


def test_sturm_comparison_orders_the_first_zeros():
    z16 = check_palpha(QFunction.constant(16.0), 0.0).first_zero
    z25 = check_palpha(QFunction.constant(25.0), 0.0).first_zero
    assert z25 == pytest.approx(math.pi / 5.0, abs=1e-9)
    assert z25 < z16  # larger coefficient oscillates sooner


def test_limits_decrease_with_the_coefficient():
    limits = [
        check_palpha(QFunction.constant(c), 0.0).limit_estimate
        for c in (0.0, 0.5, 1.358532876461639, 2.0)
    ]
    assert all(a > b for a, b in zip(limits, limits[1:]))


def test_member_at_reuses_the_ladder():
    v = check_palpha(QFunction.constant(0.0), 0.0)
    assert v.member_at(0.9) and v.member_at(0.5)
    v4 = check_palpha(QFunction.constant(4.0), 0.0)
    assert not v4.member_at(0.0)


def test_ladder_needs_enough_room():
    # eps_end coarser than the extrapolation ladder: refuse, keep the tail
    with pytest.raises(ExtrapolationDiverged) as exc:
        check_palpha(QFunction.constant(0.0), 0.5, eps_end=2.0**-8)
    assert len(exc.value.tail) >= 1


def test_alpha_validation():
    with pytest.raises(ValueError):
        check_palpha(QFunction.constant(0.0), 1.0)


# -- constant solver ------------------------------------------------------------


def test_constant_solver_frozen_value():
    c = constant_solver(0.5)
    assert c == pytest.approx(1.3585328764616391, abs=1e-12)
    rc = math.sqrt(c)
    assert abs(rc / math.tan(rc) - 0.5) <= 1e-12


def test_constant_solver_round_trip_across_targets():
    for target in (0.1, 0.3, 0.7, 0.9):
        c = constant_solver(target)
        v = check_palpha(QFunction.constant(c), 0.0)
        assert v.limit_estimate == pytest.approx(target, abs=1e-6)


def test_constant_solver_domain():
    for bad in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(TargetOutOfRange):
            constant_solver(bad)


# -- integral route -------------------------------------------------------------


def test_integral_of_the_arctan_weight():
    q = QFunction.from_expression(f"{2.0 / math.pi!r}/(1 + x^2)")
    assert integrate_q(q) == pytest.approx(0.5, abs=1e-10)


def test_integral_criterion_reports_the_implied_order():
    chk = integral_criterion(QFunction.constant(0.3), 0.3)
    assert chk.satisfied and chk.implied_order == 0.7
    assert chk.integral == pytest.approx(0.3, abs=1e-10)  # the stated abs_tol
    assert not integral_criterion(QFunction.constant(0.5), 0.3).satisfied
    with pytest.raises(ValueError):
        integral_criterion(QFunction.constant(0.1), 1.5)


def test_integral_with_mass_concentrated_at_the_boundary():
    # (n+1) x^n has unit mass with about a fifth of it beyond x = 0.999
    # at n = 200; the geometric end segments must pick all of it up
    q = QFunction.from_expression("201*x^200")
    assert integrate_q(q) == pytest.approx(1.0, abs=1e-9)


# -- sharpness search -----------------------------------------------------------


def test_sharpness_diagnostics_for_small_n():
    res = sharpness_construct(1, 0.0)
    assert not res.found and res.x0 is None and res.convexity_value is None
    # q = 2x keeps the slope ratio well above zero everywhere
    assert 0.4 < res.min_ratio < 0.6
    assert res.argmin_x > 0.99
    assert res.limit_estimate == pytest.approx(res.min_ratio, abs=1e-3)


def test_sharpness_integral_is_exact_mass():
    res = sharpness_construct(3, 0.5)
    chk = integral_criterion(res.q, 0.5)
    assert chk.satisfied and chk.implied_order == 0.5
    assert not res.found
    assert res.min_ratio > 0.5  # the limit sits above beta for finite n


def test_sharpness_gap_narrows_with_n():
    gaps = [
        sharpness_construct(n, 0.4).min_ratio - 0.4 for n in (10, 50, 200)
    ]
    assert all(g > 0 for g in gaps)
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 6e-3  # n = 200 closes to within single digits of 1e-3


def test_sharpness_validation():
    with pytest.raises(ValueError):
        sharpness_construct(0, 0.4)
    with pytest.raises(ValueError):
        sharpness_construct(2.5, 0.4)
    with pytest.raises(ValueError):
        sharpness_construct(10, 1.0)
