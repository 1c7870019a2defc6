"""Rank-one convexity checks: LH form, line scans, Knowles-Sternberg, h-criterion."""

import numpy as np
import pytest

import confmech as cm


class NegFrobenius(cm.EnergyModel):
    """Concave control energy; every rank-one direction violates ellipticity."""

    dim = 2
    label = "neg-frob"

    def value(self, F):
        return -float(np.sum(np.asarray(F) ** 2))


def test_lh_form_iso3d_at_identity():
    E = cm.builtin_energy("iso3d")
    e1 = np.array([1.0, 0.0, 0.0])
    q = cm.lh_form(E, np.eye(3), e1, e1)
    assert abs(q - 8.0 / 3.0) <= 1e-10


def test_lh_form_normalizes_direction_lengths():
    E = cm.builtin_energy("iso3d")
    e1 = np.array([1.0, 0.0, 0.0])
    q1 = cm.lh_form(E, np.eye(3), e1, e1)
    q2 = cm.lh_form(E, np.eye(3), 3.0 * e1, 0.5 * e1)
    assert abs(q1 - q2) <= 1e-9


def test_lh_form_positive_on_random_samples():
    E = cm.builtin_energy("iso3d")
    rng = np.random.default_rng(15)
    for _ in range(300):
        F = cm.random_def_gradient(rng, 3, (0.1, 10.0))
        xi = rng.standard_normal(3)
        eta = rng.standard_normal(3)
        assert cm.lh_form(E, F, xi, eta) > 0.0


def test_rank_one_line_scan_verdicts():
    E = cm.builtin_energy("iso2d-klin2")
    F0 = np.eye(2) + 0.3 * np.array([[1.0, 0.0], [0.0, 0.0]])
    e1 = np.array([1.0, 0.0])
    scan = cm.rank_one_line_scan(E, F0, e1, e1)
    assert scan.verdict == "strictly_convex"
    assert scan.min_second_difference > 0.0
    bad = cm.rank_one_line_scan(NegFrobenius(), np.eye(2), e1, e1, t_max=0.5)
    assert bad.verdict == "nonconvex"


def test_rank_one_line_scan_guards():
    E = cm.builtin_energy("iso2d-klin2")
    e1 = np.array([1.0, 0.0])
    with pytest.raises(cm.LeavesGLPlus):
        cm.rank_one_line_scan(E, np.eye(2), -e1, e1, t_max=2.0)
    with pytest.raises(cm.TooFewSamples):
        cm.rank_one_line_scan(E, np.eye(2) * 2.0, e1, e1, n_samples=2)


def test_semi_strict_check_classification():
    assert cm.semi_strict_check([0.0, 1.0, 4.0, 9.0, 16.0, 25.0]) == "strict"
    assert cm.semi_strict_check([0.0, 1.0, 2.0, 3.0, 4.0, 5.0]) == "semi_strict"
    assert cm.semi_strict_check([0.0, 0.0, 0.0, 0.0, 0.0, 0.0]) == "convex_only"
    assert cm.semi_strict_check([0.0, 1.0, 0.0, 1.0, 0.0, 1.0]) == "nonconvex"
    with pytest.raises(cm.TooFewSamples):
        cm.semi_strict_check([1.0, 2.0, 3.0])


def test_knowles_sternberg_spot_values():
    rep = cm.knowles_sternberg(
        cm.ratio_minus_one_squared,
        2.0,
        1.0,
        derivatives=cm.ratio_minus_one_squared_derivatives,
    )
    assert abs(rep.cond_i[0] - 2.0) <= 1e-12
    assert abs(rep.cond_i[1] - 16.0) <= 1e-12
    assert abs(rep.cond_ii - 8.0) <= 1e-12
    assert rep.cond_iii is None  # stretches are far from coincident
    assert abs(rep.cond_iv - np.sqrt(32.0)) <= 1e-12
    assert abs(rep.cond_v - (np.sqrt(32.0) + 16.0 / 3.0)) <= 1e-12
    assert rep.strict


def test_knowles_sternberg_fd_route_agrees():
    rep = cm.knowles_sternberg(cm.ratio_minus_one_squared, 2.0, 1.0)
    assert abs(rep.cond_i[0] - 2.0) <= 1e-4
    assert abs(rep.cond_i[1] - 16.0) <= 1e-4
    assert abs(rep.cond_ii - 8.0) <= 1e-6
    assert rep.strict


def test_knowles_sternberg_diagonal_band():
    rep = cm.knowles_sternberg(
        cm.ratio_minus_one_squared,
        1.0,
        1.0,
        derivatives=cm.ratio_minus_one_squared_derivatives,
    )
    # coincident stretches: conditions ii and iv are replaced by iii
    assert rep.cond_ii is None and rep.cond_iv is None
    assert rep.cond_iii == (4.0, 4.0)
    assert rep.cond_i == (2.0, 2.0)
    assert rep.strict
    assert rep.applicable_values() == [2.0, 2.0, 4.0, 4.0, 4.0]


def test_knowles_sternberg_symmetry_in_the_stretches():
    a = cm.knowles_sternberg(
        cm.ratio_minus_one_squared, 3.0, 0.5,
        derivatives=cm.ratio_minus_one_squared_derivatives,
    )
    b = cm.knowles_sternberg(
        cm.ratio_minus_one_squared, 0.5, 3.0,
        derivatives=cm.ratio_minus_one_squared_derivatives,
    )
    assert a.strict and b.strict
    assert abs(a.cond_ii - b.cond_ii) <= 1e-10


def test_ks_grid_scan_log_grid_all_strict():
    lams = np.logspace(-1.0, 1.0, 12)
    reports = cm.ks_grid_scan(
        cm.ratio_minus_one_squared, lams,
        derivatives=cm.ratio_minus_one_squared_derivatives,
    )
    assert len(reports) == 144
    assert all(r.strict for r in reports)
    assert all(v > 0.0 for r in reports for v in r.applicable_values())


def test_ratio_minus_one_squared_derivative_closed_forms():
    g1, g2, g11, g22, g12 = cm.ratio_minus_one_squared_derivatives(2.0, 1.0)
    assert (g1, g2, g11, g22, g12) == (2.0, -4.0, 2.0, 16.0, -6.0)


def test_h_criterion_accepts_square_families():
    res = cm.h_criterion(lambda s: (s - 1.0) ** 2)
    assert res.convex and res.strictly_convex and res.increasing
    assert res.verdict == "strictly rank-one convex"
    res2 = cm.h_criterion(lambda s: s * s - 1.0)
    assert res2.convex and res2.increasing


def test_h_criterion_rejects_concave():
    res = cm.h_criterion(np.sqrt)
    assert not res.convex


def test_scan_rank_one_convexity_builtins_strict():
    for name in cm.BUILTIN_ENERGIES:
        E = cm.builtin_energy(name)
        rep = cm.scan_rank_one_convexity(E, n_samples=300, seed=5)
        assert rep.verdict == "strictly-elliptic", (name, rep.verdict, rep.min_lh_form)
        assert rep.min_lh_form > 0.0
        assert rep.n_samples == 300
        assert len(rep.witnesses) == 3


def test_scan_rank_one_convexity_detects_violation():
    rep = cm.scan_rank_one_convexity(NegFrobenius(), n_samples=200, seed=1)
    assert rep.verdict == "violated"
    assert rep.min_lh_form < -1.0


def test_scan_is_deterministic_for_fixed_seed():
    E = cm.builtin_energy("iso2d-psi")
    a = cm.scan_rank_one_convexity(E, n_samples=100, seed=9)
    b = cm.scan_rank_one_convexity(E, n_samples=100, seed=9)
    assert a.min_lh_form == b.min_lh_form


def test_random_rotation_and_def_gradient():
    rng = np.random.default_rng(2)
    for dim in (2, 3):
        R = cm.random_rotation(rng, dim)
        assert np.allclose(R.T @ R, np.eye(dim), atol=1e-12)
        assert abs(cm.det(R) - 1.0) <= 1e-12
        F = cm.random_def_gradient(rng, dim, (0.5, 2.0))
        s = cm.singular_values(F)
        assert s[0] <= 2.0 + 1e-9 and s[-1] >= 0.5 - 1e-9
