import math

import numpy as np
import pytest

from lanemorse import ConfigError, analyze_fp, limit_constants, scales
from lanemorse.limits import REFERENCE_ELL, eval_profile, LimitProfile
from lanemorse.profile import fp_values, rescaled_potential, rescaled_profile

P_LADDER = (50.0, 100.0, 200.0, 400.0)


def test_scales_against_direct_formula(nodal):
    # p = 3 is small enough for naive powering, giving an independent route
    sol = nodal(3.0)
    sc = scales(sol)
    assert sc.eps_plus == pytest.approx((sol.p * sol.u0 ** (sol.p - 1)) ** -0.5, rel=1e-13)
    assert sc.eps_minus == pytest.approx(
        (sol.p * abs(sol.u_min) ** (sol.p - 1)) ** -0.5, rel=1e-13
    )
    assert sc.ell_hat == pytest.approx(sol.s_p / sc.eps_minus, rel=1e-14)


def test_eps_ordering(nodal):
    for p in (2.0, 5.0, 50.0):
        sc = scales(nodal(p))
        assert sc.eps_plus < sc.eps_minus


def test_ell_hat_near_reference(nodal):
    sc = scales(nodal(400.0))
    assert abs(sc.ell_hat - REFERENCE_ELL) / REFERENCE_ELL < 0.05


def test_ell_hat_gap_decreasing(nodal):
    gaps = [abs(scales(nodal(p)).ell_hat - REFERENCE_ELL) for p in P_LADDER]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


def test_ratios_increasing(nodal):
    rp = [scales(nodal(p)).ratio_plus for p in P_LADDER]
    rm = [scales(nodal(p)).ratio_minus for p in P_LADDER]
    assert all(a < b for a, b in zip(rp, rp[1:]))
    assert all(a < b for a, b in zip(rm, rm[1:]))


def test_central_steepness_increasing(nodal):
    # p u(0)^(p-1) = eps_plus^(-2) must increase along the sweep
    vals = [-2.0 * math.log(scales(nodal(p)).eps_plus) for p in (10.0, 50.0, 100.0, 400.0)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_rescaled_profile_pins(nodal):
    sol = nodal(100.0)
    sc = scales(sol)
    assert rescaled_profile(sol, "+", 0.0) == 0.0
    assert abs(rescaled_profile(sol, "-", sol.s_p / sc.eps_minus)) < 1e-9
    assert rescaled_potential(sol, "+", 0.0) == pytest.approx(1.0, abs=1e-12)
    assert abs(rescaled_potential(sol, "-", sol.s_p / sc.eps_minus) - 1.0) < 1e-9


def test_rescaled_domain_errors(nodal):
    sol = nodal(3.0)
    sc = scales(sol)
    with pytest.raises(ConfigError):
        rescaled_profile(sol, "+", 1.5 / sc.eps_plus)
    with pytest.raises(ConfigError):
        rescaled_potential(sol, "x", 1.0)


def test_positive_rescaling_converges_to_liouville(nodal):
    x = np.linspace(0.0, 5.0, 101)
    U = eval_profile(LimitProfile("U", N=2), x)
    sups = [
        float(np.max(np.abs(rescaled_profile(nodal(p), "+", x) - U)))
        for p in (100.0, 400.0)
    ]
    assert sups[1] < sups[0]


def test_negative_potential_converges_to_singular_profile(nodal):
    x = np.linspace(1.0, 5.0, 101)
    target = eval_profile(LimitProfile("V_minus", N=2), x)
    sups = [
        float(np.max(np.abs(rescaled_potential(nodal(p), "-", x) - target)))
        for p in (100.0, 400.0)
    ]
    assert sups[1] < sups[0]


def test_fp_vanishes_at_interval_ends(nodal):
    sol = nodal(50.0)
    assert fp_values(sol, 0.0) == 0.0
    assert fp_values(sol, sol.r_p) < 1e-6
    assert fp_values(sol, 1.0) < 1e-6


def test_fp_maxima_near_limits(nodal):
    fp = analyze_fp(nodal(400.0))
    ell = REFERENCE_ELL
    assert 1.8 < fp.max_plus < 2.2
    assert abs(fp.max_minus - (ell * ell + 2.0)) / (ell * ell + 2.0) < 0.10


def test_fp_uniform_bound(nodal):
    # sup f_p <= 60: the limit peak ell^2+2 ~ 53.8 plus margin
    for p in (2.0, 5.0, 10.0, 50.0, 100.0, 400.0):
        assert analyze_fp(nodal(p)).sup_f <= 60.0


def test_maximizer_scale_trends(nodal):
    k = limit_constants()
    gaps_plus, gaps_minus = [], []
    for p in (100.0, 400.0):
        sol = nodal(p)
        sc = scales(sol)
        fp = analyze_fp(sol)
        gaps_plus.append(abs(fp.c_p / sc.eps_plus - math.sqrt(8.0)))
        gaps_minus.append(abs(fp.d_p / sc.eps_minus - k.delta))
    assert gaps_plus[1] < gaps_plus[0]
    assert gaps_minus[1] < gaps_minus[0]


def test_fp_unimodal_structure(nodal):
    # one local max per nodal interval, visible from the analysis succeeding
    sol = nodal(10.0)
    fp = analyze_fp(sol)
    assert 0 < fp.c_p < sol.r_p < fp.d_p < 1.0
