import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lanemorse import (
    ConfigError,
    build_problem,
    count_negative,
    morse_index,
    sphere_spectrum,
    unweighted_radial_count,
    weighted_radial_eigs,
)
from lanemorse.profile import analyze_fp
from lanemorse.spectral import (
    AnnulusEigenProblem,
    _assemble_ledger,
    _weighted_betas_extrapolated,
    auto_grid_size,
    auto_inner_radius,
    sphere_area,
)


def free_problem(N, inner, M, weighted=True, q=None):
    """Annulus problem with prescribed potential (zero by default)."""
    t0 = math.log(inner)
    h = -t0 / (M + 1)
    t = t0 + h * np.arange(1, M + 1)
    qq = np.zeros(M) if q is None else np.asarray(q, dtype=float)
    return AnnulusEigenProblem(N=N, inner=inner, M=M, t_nodes=t, q=qq,
                               alpha=0.5 * (N - 2), weighted=weighted)


# ---------------------------------------------------------------------------
# assembly and exactly solvable cases


def test_dirichlet_exact_n2():
    # q = 0, N = 2: the log-variable operator is the Dirichlet Laplacian on
    # an interval of length |ln a|
    inner, M = 0.1, 4000
    prob = free_problem(2, inner, M)
    spec = weighted_radial_eigs(prob, 4, want_vector=False)
    L = -math.log(inner)
    for j, beta in enumerate(spec.betas, start=1):
        continuum = (j * math.pi / L) ** 2
        assert abs(beta - continuum) / continuum < 1e-5
        discrete = 2.0 / prob.h**2 * (1.0 - math.cos(j * math.pi / (M + 1)))
        assert abs(beta - discrete) < 1e-10 * discrete


def test_dirichlet_exact_n3_shift():
    inner, M = 0.05, 4000
    prob = free_problem(3, inner, M)
    spec = weighted_radial_eigs(prob, 3, want_vector=False)
    L = -math.log(inner)
    for j, beta in enumerate(spec.betas, start=1):
        target = (j * math.pi / L) ** 2 + 0.25
        assert abs(beta - target) < 2e-5 * target


def test_assembled_diagonal(nodal):
    sol = nodal(3.0)
    prob = build_problem(sol, 0.01, 64)
    h = prob.h
    expected = 2.0 / h**2 + prob.alpha**2 - prob.q
    assert np.allclose(prob.diagonal(), expected, rtol=0, atol=0)
    assert np.all(prob.offdiagonal() == -1.0 / h**2)


def test_build_problem_rejects_bad_inner(nodal):
    sol = nodal(3.0)
    with pytest.raises(ConfigError):
        build_problem(sol, sol.r_p * 1.5, 64)
    with pytest.raises(ConfigError):
        build_problem(sol, 0.01, 1)


# ---------------------------------------------------------------------------
# negative counts by inertia


def test_count_zero_potential():
    assert count_negative(free_problem(2, 0.1, 500)) == 0
    assert count_negative(free_problem(3, 0.1, 500, weighted=False)) == 0


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(min_value=0.0, max_value=400.0), min_size=4, max_size=24),
    st.floats(min_value=-50.0, max_value=50.0),
    st.booleans(),
)
def test_count_matches_dense_eigensolve(qvals, shift, weighted):
    # inertia count against a dense symmetric eigensolve on the same pencil
    M = len(qvals)
    prob = free_problem(2, 0.05, M, weighted=weighted, q=qvals)
    d, e = prob.symmetrized()
    A = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    eigs = np.linalg.eigvalsh(A)
    expected = int(np.sum(eigs < shift))
    if np.min(np.abs(eigs - shift)) < 1e-9:
        return  # shift landed on an eigenvalue; the count is ill-posed
    assert count_negative(prob, shift=shift) == expected


def test_count_cross_oracle(nodal):
    sol = nodal(5.0)
    prob = build_problem(sol, auto_inner_radius(sol), 4096)
    spec = weighted_radial_eigs(prob, 6, want_vector=False)
    assert count_negative(prob) == int(np.sum(spec.betas < 0))


# ---------------------------------------------------------------------------
# the weighted spectrum on solution annuli


def test_radial_counts_are_two(nodal):
    for p in (5.0, 50.0, 400.0):
        sol = nodal(p)
        inner = auto_inner_radius(sol)
        M = auto_grid_size(inner)
        assert count_negative(build_problem(sol, inner, M)) == 2
        assert unweighted_radial_count(sol, inner, M) == 2
        # agreement under grid doubling
        assert unweighted_radial_count(sol, inner, 2 * M) == 2


def test_beta2_strictly_above_threshold_small_p(nodal):
    # at moderate p the margin over -(N-1) is genuinely resolvable
    for p, margin in ((2.0, 0.3), (3.0, 0.05), (5.0, 0.005), (10.0, 5e-5)):
        sol = nodal(p)
        inner = auto_inner_radius(sol)
        betas, _ = _weighted_betas_extrapolated(sol, inner, auto_grid_size(inner), 2)
        assert betas[1] > -1.0 + margin / 2.0
        assert betas[1] < 0.0


def test_beta1_window_p400(nodal):
    sol = nodal(400.0)
    inner = auto_inner_radius(sol)
    betas, _ = _weighted_betas_extrapolated(sol, inner, auto_grid_size(inner), 3)
    assert -36.0 < betas[0] < -25.0
    assert betas[2] > 0.0


def test_beta1_bounded_by_sup_fp(nodal):
    # the first weighted eigenvalue cannot drop below -sup f_p
    for p in (5.0, 50.0, 400.0):
        sol = nodal(p)
        inner = auto_inner_radius(sol)
        spec = weighted_radial_eigs(
            build_problem(sol, inner, auto_grid_size(inner)), 1, want_vector=False
        )
        assert spec.betas[0] >= -analyze_fp(sol).sup_f


def test_domain_monotonicity_nested_annuli(nodal):
    # beta_i^n >= beta_i^(n+1): deepening the annulus lowers every eigenvalue.
    # Grids are h-matched so the discretization bias cancels in comparisons.
    sol = nodal(5.0)
    inner0 = sol.r_p / 2.0
    M0 = 8192
    h = -math.log(inner0) / (M0 + 1)
    prev = None
    prev_count = 0
    for inner in (inner0, inner0 / 2.0, inner0 / 4.0, inner0 / 16.0):
        M = int(round(-math.log(inner) / h)) - 1
        prob = build_problem(sol, inner, M)
        spec = weighted_radial_eigs(prob, 3, want_vector=False)
        if prev is not None:
            assert np.all(spec.betas <= prev + 1e-7)
        assert spec.neg_count >= prev_count
        prev, prev_count = spec.betas, spec.neg_count
    assert prev_count == 2


def test_grid_convergence(nodal):
    sol = nodal(50.0)
    inner = auto_inner_radius(sol)
    M = auto_grid_size(inner)
    b1 = weighted_radial_eigs(build_problem(sol, inner, M), 1, want_vector=False).betas[0]
    b2 = weighted_radial_eigs(build_problem(sol, inner, 2 * M), 1, want_vector=False).betas[0]
    assert abs(b2 - b1) / abs(b1) < 1e-4


def test_first_eigenfunction_positive_and_normalized(nodal):
    sol = nodal(5.0)
    inner = auto_inner_radius(sol)
    prob = build_problem(sol, inner, 8192)
    spec = weighted_radial_eigs(prob, 1, want_vector=True)
    r, phi = spec.eigvec_1
    assert np.all(phi > 0)
    # independent check of the weighted normalization by trapezoid in r
    integrand = phi**2 * r ** (sol.N - 3)
    norm2 = sphere_area(sol.N) * np.trapezoid(integrand, r)
    assert norm2 == pytest.approx(1.0, rel=1e-3)


# ---------------------------------------------------------------------------
# sphere spectrum


def homogeneous_dim_dp(n_vars: int, deg: int) -> int:
    """Monomial count by dynamic programming (no binomial formula)."""
    if deg < 0:
        return 0
    counts = [1] * (deg + 1)  # one variable
    for _ in range(n_vars - 1):
        acc = 0
        new = []
        for k in range(deg + 1):
            acc += counts[k]
            new.append(acc)
        counts = new
    return counts[deg]


def test_sphere_spectrum_exact_small():
    assert sphere_spectrum(2, 3) == [(0, 1), (1, 2), (4, 2), (9, 2)]
    assert sphere_spectrum(3, 2)[2] == (6, 5)
    assert sphere_spectrum(4, 1)[1] == (3, 4)


def test_sphere_spectrum_against_combinatorial_oracle():
    for N in range(2, 11):
        spec = sphere_spectrum(N, 50)
        for k, (lam, mult) in enumerate(spec):
            assert lam == k * (k + N - 2)
            assert mult == homogeneous_dim_dp(N, k) - homogeneous_dim_dp(N, k - 2)
            assert mult > 0


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=10), st.integers(min_value=1, max_value=40))
def test_sphere_multiplicity_recursion(N, k):
    # dim of degree-k spherical harmonics equals the trace dimension
    # difference of homogeneous polynomials in N variables
    lam, mult = sphere_spectrum(N, k)[k]
    assert lam - sphere_spectrum(N, k - 1)[k - 1][0] == 2 * k + N - 3
    assert mult == homogeneous_dim_dp(N, k) - homogeneous_dim_dp(N, k - 2)


# ---------------------------------------------------------------------------
# the Morse ledger


@settings(max_examples=80, deadline=None)
@given(
    st.floats(min_value=-35.9, max_value=-25.1),
    st.floats(min_value=-0.99, max_value=-0.01),
)
def test_ledger_arithmetic_window(b1, b2):
    # whenever beta_1 is in (-36, -25) and beta_2 in (-1, 0) the planar
    # ledger must read 1 + 1 + 2*5 = 12
    ledger, total = _assemble_ledger(2, [(1, b1), (2, b2)])
    assert total == 12
    assert [e.mult for e in ledger if e.contributes] == [1, 1, 2, 2, 2, 2, 2]


def test_ledger_tie_handling():
    # a sum inside the tie window counts as nonnegative and is flagged
    ledger, total = _assemble_ledger(2, [(1, -26.0), (2, -1.0 + 1e-12)])
    assert total == 12
    boundary = [e for e in ledger if e.boundary]
    assert len(boundary) == 1 and boundary[0].i == 2 and boundary[0].k == 1


def test_morse_report_moderate_p(nodal):
    rep = morse_index(nodal(5.0))
    assert rep.m_rad == 2
    assert rep.total >= rep.N + 2
    assert rep.stable


def test_morse_report_three_dimensional(nodal):
    # the decomposition machinery is dimension-generic: lambda_k = k(k+1)
    # with multiplicities 2k+1 on the two-sphere
    rep = morse_index(nodal(3.0, N=3))
    assert rep.m_rad == 2
    assert rep.total >= 5  # N + 2
    assert all(e.mult == 2 * e.k + 1 for e in rep.ledger)


def test_morse_report_p400(nodal):
    rep = morse_index(nodal(400.0))
    assert rep.total == 12
    assert rep.contributions == [1, 1, 2, 2, 2, 2, 2]
    assert rep.m_rad == 2
    assert -36.0 < rep.beta1 < -25.0
    assert rep.stable
    assert rep.stability_totals == (12, 12, 12)
