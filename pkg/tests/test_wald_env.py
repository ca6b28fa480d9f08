"""Domains, Wald utilities, sampling, and Lipschitz validation."""

import numpy as np
import pytest

from recovery_lab.errors import RejectionCapError, ShapeMismatchError
from recovery_lab.wald_env import (
    BoxDomain,
    ConeDomain,
    UtilityFamily,
    WaldUtility,
    contains,
    domain_from_dict,
    lattice_points,
    lipschitz_estimate,
    sample,
    u_eval,
    validate_family_kappa,
    wald_check,
)

CONE = ConeDomain(alpha=0.1, M=1.0, d=2)
BOX = BoxDomain.unit(2)


class TestDomains:
    def test_cone_membership_formula(self):
        # ||(0.5, 0.5)|| ~ 0.707 <= 1 and min 0.5 >= 0.0707
        assert contains(CONE, (0.5, 0.5))

    def test_origin_is_member(self):
        assert contains(CONE, (0.0, 0.0))

    def test_floor_violation_on_sphere_ray(self):
        assert not contains(CONE, (1.0, 0.0))

    def test_cone_matches_two_parameter_construction(self):
        # oracle: x is in the domain iff x = theta * s with ||s|| = M and
        # s >= alpha * 1; build points both ways and compare with the closed form
        rng = np.random.default_rng(0)
        for _ in range(500):
            theta = rng.uniform(0, 1)
            raw = rng.uniform(CONE.alpha, 1.0, size=2)
            s = raw / np.linalg.norm(raw) * CONE.M
            if np.min(s) < CONE.alpha:  # not on the sphere patch
                continue
            assert contains(CONE, theta * s)
        for _ in range(500):
            x = rng.uniform(0, CONE.M, size=2)
            norm = np.linalg.norm(x)
            member = norm <= CONE.M and (norm == 0 or np.min(x) >= CONE.alpha * norm / CONE.M)
            if member and norm > 0:
                s = x / norm * CONE.M
                assert np.min(s) >= CONE.alpha - 1e-12 and np.linalg.norm(s) == pytest.approx(1.0)
            assert contains(CONE, x) == member

    def test_cone_nonempty_invariant(self):
        with pytest.raises(ValueError):
            ConeDomain(alpha=0.8, M=1.0, d=2)

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            contains(CONE, (0.1, 0.1, 0.1))

    def test_box_sampling_reproducible(self):
        a = sample(BOX, np.random.default_rng(42))
        b = sample(BOX, np.random.default_rng(42))
        assert np.array_equal(a, b)
        assert contains(BOX, a)

    def test_cone_samples_are_members(self):
        rng = np.random.default_rng(1)
        pts = CONE.sample_batch(rng, 10_000)
        assert np.all(CONE.contains_batch(pts))

    def test_cone_acceptance_rate_matches_quadrature(self):
        # fine-grid area estimate of Vol(D)/M^d as the acceptance oracle
        g = 801
        axis = np.linspace(0, CONE.M, g)
        xx, yy = np.meshgrid(axis, axis, indexing="ij")
        pts = np.stack([xx.ravel(), yy.ravel()], axis=1)
        vol_frac = CONE.contains_batch(pts).mean()
        n = 20_000
        rng = np.random.default_rng(2)
        draws = rng.uniform(0, CONE.M, size=(n, 2))
        acc = CONE.contains_batch(draws).mean()
        sigma = np.sqrt(vol_frac * (1 - vol_frac) / n)
        assert abs(acc - vol_frac) <= 3 * sigma

    def test_rejection_cap_error(self):
        thin = ConeDomain(alpha=0.7070, M=1.0, d=2)
        with pytest.raises(RejectionCapError):
            thin.sample(np.random.default_rng(3), max_tries=2)

    def test_convexity_witness(self):
        rng = np.random.default_rng(4)
        pts = CONE.sample_batch(rng, 2000)
        for i in range(0, 2000, 2):
            x, y = pts[i], pts[i + 1]
            for t in (0.25, 0.5, 0.75):
                assert contains(CONE, t * x + (1 - t) * y)

    def test_descriptor_roundtrip(self):
        assert domain_from_dict(CONE.to_dict()) == CONE
        assert domain_from_dict(BOX.to_dict()) == BOX


class TestUtilityEval:
    def test_diagonal_normalization(self):
        rng = np.random.default_rng(5)
        for u in [
            WaldUtility("linear", (0.3, 0.7)),
            WaldUtility("ces", (0.5, 0.5), rho=2.0),
            WaldUtility("cobb_douglas", (0.25, 0.75)),
        ]:
            for _ in range(20):
                c = float(rng.uniform(0.01, 1.0))
                assert u_eval(u, (c, c)) == pytest.approx(c, abs=1e-12)

    def test_linear_dot(self):
        assert u_eval(WaldUtility("linear", (0.3, 0.7)), (1.0, 0.0)) == pytest.approx(0.3)

    def test_ces_formula(self):
        u = WaldUtility("ces", (0.5, 0.5), rho=2.0)
        assert u_eval(u, (1.0, 0.0)) == pytest.approx(np.sqrt(0.5), abs=1e-12)

    def test_ces_negative_rho_zero_convention(self):
        u = WaldUtility("ces", (0.5, 0.5), rho=-1.0)
        assert u_eval(u, (0.0, 1.0)) == 0.0
        assert u_eval(u, (0.5, 0.5)) == pytest.approx(0.5, abs=1e-12)

    def test_negative_coordinates_rejected(self):
        u = WaldUtility("ces", (0.5, 0.5), rho=0.5)
        with pytest.raises(ValueError):
            u_eval(u, (-0.1, 0.5))

    def test_invariants(self):
        with pytest.raises(ValueError):
            WaldUtility("ces", (0.5, 0.5), rho=0.0)
        with pytest.raises(ValueError):
            WaldUtility("cobb_douglas", (0.0, 1.0))
        with pytest.raises(ValueError):
            WaldUtility("linear", (0.4, 0.4))

    def test_homogeneity_exact(self):
        rng = np.random.default_rng(6)
        members = [
            WaldUtility("ces", (0.4, 0.6), rho=2.0),
            WaldUtility("ces", (0.5, 0.5), rho=-1.0),
            WaldUtility("cobb_douglas", (0.3, 0.7)),
            WaldUtility("linear", (0.2, 0.8)),
        ]
        for u in members:
            for _ in range(250):
                x = rng.uniform(0.01, 1.0, size=2)
                for theta in (0.25, 0.5, 0.75):
                    assert abs(u_eval(u, theta * x) - theta * u_eval(u, x)) <= 1e-12


class TestWaldCheck:
    def test_linear_on_box_exact(self):
        rep = wald_check(WaldUtility("linear", (0.3, 0.7)), BOX, 200)
        assert rep.max_wald_violation <= 1e-15  # exact identity up to rounding

    def test_ces_on_cone(self):
        rep = wald_check(WaldUtility("ces", (0.5, 0.5), rho=2.0), CONE, 200)
        assert rep.max_wald_violation <= 1e-12
        assert rep.max_homogeneity_violation <= 1e-12

    def test_cobb_douglas_halving(self):
        u = WaldUtility("cobb_douglas", (0.5, 0.5))
        assert u_eval(u, (1.0, 4.0)) == pytest.approx(2.0, abs=1e-12)
        assert u_eval(u, (0.5, 2.0)) == pytest.approx(1.0, abs=1e-12)


class TestLipschitz:
    def test_linear_recovers_weight_norm(self):
        w = (0.3, 0.7)
        est = lipschitz_estimate(WaldUtility("linear", w), BOX, 0.1)
        assert est == pytest.approx(float(np.linalg.norm(w)), abs=1e-9)

    def test_degenerate_weight(self):
        est = lipschitz_estimate(WaldUtility("linear", (1.0, 0.0)), BOX, 0.25)
        assert est == pytest.approx(1.0, abs=1e-12)

    def test_ces_refinement_oracle(self):
        # oracle: max finite-difference gradient norm on a much finer grid
        inner = BoxDomain((0.1, 0.1), (1.0, 1.0))
        u = WaldUtility("ces", (0.5, 0.5), rho=2.0)
        h = 1e-4
        axis = np.linspace(0.1, 1.0 - h, 150)
        xx, yy = np.meshgrid(axis, axis, indexing="ij")
        pts = np.stack([xx.ravel(), yy.ravel()], axis=1)
        base = u.value_batch(pts)
        gx = (u.value_batch(pts + np.array([h, 0.0])) - base) / h
        gy = (u.value_batch(pts + np.array([0.0, h])) - base) / h
        oracle = float(np.max(np.hypot(gx, gy)))
        est = lipschitz_estimate(u, inner, 0.05)
        assert np.isfinite(est)
        assert est <= 1.01 * oracle
        # this CES utility has constant gradient norm 1/sqrt(2)
        assert est == pytest.approx(1 / np.sqrt(2), abs=0.05)

    def test_family_kappa_validation(self):
        fam = UtilityFamily("linear", BOX, weight_steps=4, kappa=1.0)
        assert validate_family_kappa(fam, grid_step=0.25)
        for m in fam.members():
            assert lipschitz_estimate(m, BOX, 0.25) <= fam.kappa * (1 + 1e-6)


class TestFamilies:
    def test_member_count(self):
        fam = UtilityFamily("linear", BOX, weight_steps=4)
        assert len(fam.members()) == 5

    def test_cobb_douglas_interior_only(self):
        fam = UtilityFamily("cobb_douglas", BOX, weight_steps=4)
        assert all(min(m.weights) > 0 for m in fam.members())
        assert len(fam.members()) == 3

    def test_ces_grid_product(self):
        fam = UtilityFamily("ces", CONE, weight_steps=2, rho_grid=(0.5, 2.0))
        assert len(fam.members()) == 6
        assert all(m.rho in (0.5, 2.0) for m in fam.members())

    def test_wald_property_for_all_members(self):
        fam = UtilityFamily("ces", CONE, weight_steps=4, rho_grid=(0.5, 2.0))
        rng = np.random.default_rng(7)
        pts = CONE.sample_batch(rng, 1000)
        for m in fam.members():
            vals = m.value_batch(pts)
            diag = np.stack([vals, vals], axis=1)
            assert np.max(np.abs(m.value_batch(diag) - vals)) <= 1e-12

    def test_refinement_stays_valid(self):
        fam = UtilityFamily("ces", CONE, weight_steps=4, rho_grid=(0.5, 2.0))
        m = fam.members()[3]
        for level in (1, 2):
            for cand in fam.refine_around(m, level):
                assert abs(sum(cand.weights) - 1.0) <= 1e-12

    def test_descriptor_roundtrip(self):
        fam = UtilityFamily("ces", CONE, weight_steps=8, rho_grid=(0.5, 2.0), kappa=None)
        back = UtilityFamily.from_dict(fam.to_dict(), CONE)
        assert back == fam

    def test_lattice_points_inside(self):
        pts = lattice_points(CONE, 20)
        assert np.all(CONE.contains_batch(pts))
        assert len(pts) > 50
        box_pts = lattice_points(BOX, 4)
        assert len(box_pts) == 25
