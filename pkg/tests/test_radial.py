
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lanemorse import ConfigError, IvpConfig, integrate_ivp, solve_nodal
from lanemorse.radial import signed_power


def bessel_j0_first_zero():
    """Independent oracle: power series of J0 plus sign bisection."""

    def j0(x):
        term, total = 1.0, 1.0
        for k in range(1, 60):
            term *= -(x * x / 4.0) / (k * k)
            total += term
            if abs(term) < 1e-18:
                break
        return total

    lo, hi = 2.0, 3.0
    assert j0(lo) > 0 > j0(hi)
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if j0(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_bessel_first_zero():
    # p = 1 turns the radial equation into Bessel's equation of order zero
    traj = integrate_ivp(IvpConfig(p=1.0, N=2, a=1.0, r_max=10.0))
    oracle = bessel_j0_first_zero()
    assert abs(traj.zeros[0][0] - oracle) < 1e-8


def test_zero_initial_data():
    traj = integrate_ivp(IvpConfig(p=3.0, N=2, a=0.0, r_max=10.0))
    assert traj.zeros == []
    assert np.all(traj.u == 0.0)
    u, du = traj.eval(np.array([0.5, 2.0]))
    assert np.all(u == 0.0) and np.all(du == 0.0)


def test_trajectory_residual_small():
    traj = integrate_ivp(IvpConfig(p=3.0, N=2, a=1.0, r_max=30.0))
    assert traj.residual_sup() < 1e-8


def test_signed_power_basics():
    assert signed_power(0.0, 7.0) == 0.0
    assert signed_power(-2.0, 3.0) == pytest.approx(-8.0, rel=1e-14)
    assert signed_power(1e-200, 5.0) == 0.0  # graceful underflow
    # p = 1 is the identity even through the log form
    assert signed_power(-0.3, 1.0) == pytest.approx(-0.3, rel=1e-15)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-3.0, max_value=3.0),
       st.floats(min_value=1.0, max_value=500.0))
def test_signed_power_odd(u, p):
    # the nonlinearity is odd, bit-exactly so in the log evaluation
    assert signed_power(-u, p) == -signed_power(u, p)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=1e-3, max_value=5.0),
       st.floats(min_value=1e-3, max_value=5.0),
       st.floats(min_value=1.0, max_value=200.0))
def test_signed_power_monotone(a, b, p):
    lo, hi = sorted((a, b))
    assert signed_power(lo, p) <= signed_power(hi, p)


@pytest.mark.parametrize(
    "kw",
    [
        dict(p=0.0, N=2, a=1.0),
        dict(p=3.0, N=1, a=1.0),
        dict(p=3.0, N=2, a=1.0, r_start=-1.0),
        dict(p=3.0, N=2, a=1.0, r_max=1e-7),
        dict(p=3.0, N=2, a=1.0, rel_tol=0.0),
    ],
)
def test_config_validation(kw):
    with pytest.raises(ConfigError):
        IvpConfig(**kw)


@pytest.mark.parametrize("lam", [0.5, 2.0])
def test_scaling_identity(lam):
    # u_lam(r) = lam^(2/(p-1)) u(lam r) solves the same equation
    p = 3.0
    base = integrate_ivp(IvpConfig(p=p, N=2, a=1.0, r_max=8.0, max_zeros=None))
    k = lam ** (2.0 / (p - 1.0))
    scaled = integrate_ivp(
        IvpConfig(p=p, N=2, a=k, r_start=1e-6 / lam, r_max=8.0 / lam, max_zeros=None)
    )
    r = np.linspace(0.05, 7.0 / lam, 200)
    u_s, _ = scaled.eval(r)
    u_b, _ = base.eval(lam * r)
    assert np.max(np.abs(u_s - k * u_b)) < 1e-9


def test_zeros_ordered_and_simple():
    traj = integrate_ivp(IvpConfig(p=3.0, N=2, a=1.0, r_max=1e4, max_zeros=6))
    radii = [z for z, _ in traj.zeros]
    assert len(radii) == 6
    assert all(a < b for a, b in zip(radii, radii[1:]))
    directions = [d for _, d in traj.zeros]
    assert directions == [-1, 1, -1, 1, -1, 1]
    for r_z, _ in traj.zeros:
        _, du = traj.eval(r_z)
        assert abs(du) > 1e-6  # Hopf-type simplicity


def test_nodal_construction(nodal):
    sol = nodal(3.0)
    assert abs(sol.u[-1]) < 1e-9
    assert 0 < sol.r_p < sol.s_p < 1
    assert sol.u_min < 0 < sol.u0
    assert sol.u0 == pytest.approx(sol.lam ** (2.0 / (sol.p - 1.0)), rel=1e-14)
    # exactly one interior sign change on the grid
    signs = np.sign(sol.u[(sol.grid > 0) & (sol.grid < 1)])
    changes = np.sum(signs[:-1] * signs[1:] < 0)
    assert changes == 1


def test_nodal_residual_invariant(nodal):
    for p in (3.0, 7.5):
        assert nodal(p).residual_sup() < 1e-7


def test_nodal_self_consistency(nodal):
    sol = nodal(3.0)
    tight = solve_nodal(3.0, rel_tol=5e-13)
    assert abs(sol.r_p - tight.r_p) / sol.r_p < 1e-8


def test_eval_consistent_with_grid(nodal):
    sol = nodal(5.0)
    sub = slice(1, None, 25)
    u, du = sol.eval(sol.grid[sub])
    assert np.allclose(u, sol.u[sub], rtol=1e-10, atol=1e-12)
    assert np.allclose(du, sol.du[sub], rtol=1e-10, atol=1e-12)


def test_eval_taylor_region(nodal):
    sol = nodal(5.0)
    u, du = sol.eval(0.0)
    assert u == sol.u0 and du == 0.0
    # below the integration start the origin Taylor model applies smoothly
    r_lo = sol._traj.config.r_start / sol.lam
    u_a, _ = sol.eval(r_lo * 0.99)
    u_b, _ = sol.eval(r_lo * 1.01)
    assert abs(u_a - u_b) < 1e-10 * sol.u0


def test_supercritical_rejected():
    with pytest.raises(ConfigError):
        solve_nodal(5.0, N=3)
    with pytest.raises(ConfigError):
        solve_nodal(1.0, N=2)


def test_nodal_N3():
    sol = solve_nodal(3.0, N=3)
    assert abs(sol.u[-1]) < 1e-9
    assert sol.u_min < 0 < sol.u0
    assert sol.residual_sup() < 1e-7
