"""Family functionals, disk sampling, and membership verdicts."""

import numpy as np
import pytest

from gftkit import (
    DiskSampler,
    Family,
    functional_value,
    injectivity_spot_check,
    membership,
    order_estimate,
    parse,
)
from gftkit.catalog import get_entry
from gftkit.errors import (
    DivisionAtZero,
    EvaluationFailed,
    LocallyNonUnivalent,
    UnivalenceNotChecked,
)


# -- functional values at hand-checked points --------------------------------
# Koebe: 1 + zf''/f' = (z^2+4z+1)/(1-z^2), zf'/f = (1+z)/(1-z)


def test_koebe_functionals_exact_rationals():
    k = get_entry("koebe").expr
    assert functional_value(k, Family.C, 0.25) == pytest.approx(33 / 15, abs=1e-13)
    assert functional_value(k, Family.C, -0.5) == pytest.approx(-1.0, abs=1e-13)
    assert functional_value(k, Family.SSTAR, 0.25) == pytest.approx(5 / 3, abs=1e-13)
    assert functional_value(k, Family.SSTAR, -0.5) == pytest.approx(1 / 3, abs=1e-13)


def test_mobius_pole_functionals_are_constant_one_and_cayley():
    g = get_entry("mobius_pole").expr  # (1-z)/z
    z = 0.3 - 0.4j
    assert functional_value(g, Family.BC, z) == pytest.approx(1.0, abs=1e-13)
    # -Re(zg'/g) = Re(1/(1-z))
    want = (1.0 / (1.0 - z)).real
    assert functional_value(g, Family.BSSTAR, z) == pytest.approx(want, abs=1e-13)


def test_inverse_convex_functional_closed_form():
    # g = z + 1/z - 2 gives 1 - 2z(z+2)/(z^2-1); zero exactly at -r0
    g = get_entry("koebe_reciprocal").expr
    r0 = 2.0 - np.sqrt(3.0)
    assert abs(functional_value(g, Family.BCI, -r0)) <= 1e-12
    for z in (0.3, 0.2j, -0.1 - 0.25j):
        want = (1.0 - 2.0 * z * (z + 2.0) / (z * z - 1.0)).real
        assert functional_value(g, Family.BCI, z) == pytest.approx(want, abs=1e-12)


def test_pole_normalized_families_take_limit_one_at_origin():
    g = get_entry("quarter_pole").expr
    assert functional_value(g, Family.BC, 0.0) == 1.0
    assert functional_value(g, Family.BSSTAR, 0.0) == 1.0
    # near the pole the functional approaches the limit quadratically
    for th in (0.0, 1.0, 2.5):
        v = functional_value(g, Family.BC, 1e-3 * np.exp(1j * th))
        assert abs(v - 1.0) <= 1e-4


def test_analytic_families_are_not_patched_at_zero():
    k = get_entry("koebe").expr
    # Re(1 + 0) = 1 comes out of the arithmetic for convexity ...
    assert functional_value(k, Family.C, 0.0) == 1.0
    # ... but the starlike quotient zf'/f is 0/0 there
    with pytest.raises(DivisionAtZero):
        functional_value(k, Family.SSTAR, 0.0)


def test_scalar_critical_point_raises():
    with pytest.raises(LocallyNonUnivalent):
        functional_value(parse("z + z^2"), Family.C, -0.5)


def test_array_input_masks_instead_of_raising():
    k = get_entry("koebe").expr
    vals = functional_value(k, Family.SSTAR, np.array([0.25, 0.0, -0.5]))
    assert vals[0] == pytest.approx(5 / 3)
    assert np.isnan(vals[1])
    assert vals[2] == pytest.approx(1 / 3)


# -- sampler ------------------------------------------------------------------


def test_sampler_radii_reach_r_max_geometrically():
    s = DiskSampler(r_max=0.999, rings=64, points_per_ring=512)
    r = s.radii()
    assert r.shape == (64,)
    assert np.all(np.diff(r) > 0)
    assert r[-1] == pytest.approx(0.999, abs=1e-15)
    # each block of rings halves the remaining distance to the boundary
    gaps = 1.0 - r
    assert gaps[0] > 0.3  # coverage of the inner disk too


def test_sampler_excludes_declared_singularities():
    s = DiskSampler(rings=16, points_per_ring=64)
    pts = s.points(singular_points=(0.5,), exclusion_radius=0.05)
    assert pts.size > 0
    assert np.min(np.abs(pts)) >= 1e-3
    assert np.min(np.abs(pts - 0.5)) >= 0.05


def test_sampler_validation():
    with pytest.raises(ValueError):
        DiskSampler(r_max=1.0)
    with pytest.raises(ValueError):
        DiskSampler(exclusion_radius=0.0)
    with pytest.raises(ValueError):
        DiskSampler(points_per_ring=2)
    assert not DiskSampler(rings=2, points_per_ring=8).verdict_grade
    assert DiskSampler().verdict_grade


# -- membership verdicts -------------------------------------------------------


def test_koebe_is_not_convex_witness_on_negative_axis():
    v = membership(get_entry("koebe").expr, Family.C, 0.0)
    assert not v.holds_on_samples
    assert v.margin < -100  # the functional plunges near z = -1
    assert v.witness.real < -0.99 and abs(v.witness.imag) < 1e-2


def test_koebe_is_starlike_of_order_zero_exactly():
    v = membership(get_entry("koebe").expr, Family.SSTAR, 0.0)
    assert v.holds_on_samples
    assert 0 <= v.margin <= 1e-3  # sharp: margin shrinks with 1 - r_max


def test_verdict_records_sampling_accounting():
    s = DiskSampler(rings=8, points_per_ring=128)
    v = membership(get_entry("quarter_pole").expr, Family.BC, 0.5, sampler=s)
    # every grid point evaluates, plus the synthetic origin limit
    assert v.samples_evaluated == 8 * 128 + 1
    assert v.samples_skipped == 0
    assert v.tol == 1e-6


def test_constant_map_fails_loudly():
    with pytest.raises(EvaluationFailed):
        membership(parse("3 + 0*z"), Family.C, 0.0)


def test_inverse_convex_verdict_warns_univalence_unchecked():
    g = get_entry("inverse_log").expr
    with pytest.warns(UnivalenceNotChecked):
        v = membership(g, Family.BCI, 0.5)
    assert v.holds_on_samples


def test_alpha_domain_is_validated():
    f = get_entry("quarter_pole").expr
    for bad in (-0.1, 1.0, 1.5):
        with pytest.raises(ValueError):
            membership(f, Family.BC, bad)


def test_starlike_order_transfers_to_the_reciprocal():
    # zf'/f = -z(1/f)'/(1/f) pointwise, so S* order of f equals BS* order of 1/f
    f = get_entry("koebe").expr
    g = 1.0 / f
    z = 0.7 * np.exp(1j * np.linspace(0.1, 6.2, 50))
    a = functional_value(f, Family.SSTAR, z)
    b = functional_value(g, Family.BSSTAR, z)
    assert np.allclose(a, b, rtol=0, atol=1e-12)


def test_order_estimate_polishes_the_grid_minimum():
    est = order_estimate(get_entry("quarter_pole").expr, Family.BC)
    assert est == pytest.approx(0.6006399358463514, abs=1e-9)
    # constant functional: the estimate is the constant, up to roundoff
    assert order_estimate(get_entry("mobius_pole").expr, Family.BC) == pytest.approx(
        1.0, abs=1e-12
    )


def test_thread_count_does_not_change_the_verdict(monkeypatch):
    f = get_entry("quarter_pole").expr
    base = membership(f, Family.BC, 0.5)
    monkeypatch.setenv("GFT_THREADS", "4")
    threaded = membership(f, Family.BC, 0.5)
    assert threaded.margin == base.margin
    assert threaded.witness == base.witness
    assert threaded.samples_evaluated == base.samples_evaluated


def test_injectivity_spot_check_is_a_coarse_screen():
    assert injectivity_spot_check(get_entry("koebe").expr)
    assert injectivity_spot_check(get_entry("inverse_log").expr)
    # value-collapsing maps are the failure mode it exists to catch
    assert not injectivity_spot_check(parse("2 + 0*z"))
