import numpy as np
import pytest

from lorentz_crofton import (
    certify_strong_spacelike,
    reparametrize_arclength,
    to_latlong,
    total_curvature,
    winding_index,
)
from lorentz_crofton import gallery
from lorentz_crofton.errors import BadParameter, NotSpacelike, NotStrongSpacelike

from conftest import simpson_oracle

TWO_PI = 2.0 * np.pi


class TestClamShell:
    def test_c2_matching_at_junctions(self):
        # one-sided limits of the five closed-form pieces at the junctions
        eps = 0.5
        pieces = [
            (lambda x: eps * x, lambda x: eps + 0 * x, lambda x: 0 * x),
            (lambda x: 0.5 * np.pi * eps - eps * np.cos(x),
             lambda x: eps * np.sin(x), lambda x: eps * np.cos(x)),
            (lambda x: -eps * (x - TWO_PI), lambda x: -eps + 0 * x, lambda x: 0 * x),
            (lambda x: -0.5 * np.pi * eps + eps * np.cos(x),
             lambda x: -eps * np.sin(x), lambda x: -eps * np.cos(x)),
            (lambda x: eps * (x - 2 * TWO_PI), lambda x: eps + 0 * x, lambda x: 0 * x),
        ]
        junctions = [0.5 * np.pi, 1.5 * np.pi, 2.5 * np.pi, 3.5 * np.pi]
        for i, junction in enumerate(junctions):
            for order in (0, 1, 2):
                left = pieces[i][order](junction)
                right = pieces[i + 1][order](junction)
                assert abs(left - right) < 1e-12
                # and the library piece selection matches the right limit
                assert abs(gallery.clam_shell_height(junction, eps, order)
                           - right) < 1e-12

    def test_slope_energy_identity(self):
        # h'^2 + h''^2 equals eps^2 on cosine arcs and on linear ramps
        eps = 0.37
        th = np.linspace(0.0, 2.0 * TWO_PI, 4096, endpoint=False)
        hp = gallery.clam_shell_height(th, eps, 1)
        hpp = gallery.clam_shell_height(th, eps, 2)
        np.testing.assert_allclose(hp ** 2 + hpp ** 2, eps ** 2, atol=1e-12)

    def test_bound_formula_values(self):
        assert abs(gallery.clam_shell_bound(0.6) - 7.853981633974483) < 1e-12
        assert abs(gallery.clam_shell_bound(0.8) - 10.471975511965978) < 1e-12
        assert abs(gallery.clam_shell_bound(1e-9) - TWO_PI) < 1e-9

    def test_total_curvature_meets_bound_on_grid(self):
        prev = 0.0
        for eps in np.arange(0.1, 0.95, 0.1):
            arc = reparametrize_arclength(gallery.clam_shell(eps), 2048)
            tc = total_curvature(arc)
            assert tc >= gallery.clam_shell_bound(eps) - 1e-6
            assert tc > prev
            prev = tc

    def test_parameter_validation(self):
        for bad in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(BadParameter):
                gallery.clam_shell(bad)
        with pytest.raises(BadParameter):
            gallery.clam_shell_bound(1.0)

    def test_certified_and_index_two(self, clam05_arc):
        assert certify_strong_spacelike(clam05_arc).verdict
        assert winding_index(clam05_arc) == 2


class TestWobble:
    def test_flat_case_is_equator(self):
        g = gallery.wobble(0.0, 1, 1)
        assert g.phi_abs_max == 0.0
        assert abs(g.length - TWO_PI) < 1e-12
        g3 = gallery.wobble(0.0, 1, 3)
        assert abs(g3.length - 3 * TWO_PI) < 1e-12
        assert g3.index == 3

    def test_admissible_example(self, wobble1_g):
        assert wobble1_g.index == 1
        assert wobble1_g.length < TWO_PI
        # independent quadrature of the speed
        oracle = simpson_oracle(
            lambda t: np.sqrt(np.cosh(0.2 * np.sin(3 * t)) ** 2
                              - (0.6 * np.cos(3 * t)) ** 2), 0.0, TWO_PI, n=40001)
        assert abs(wobble1_g.length - oracle) < 1e-10

    def test_inadmissible_rejected(self):
        with pytest.raises(NotSpacelike) as err:
            gallery.wobble(2.0, 3, 1)
        assert err.value.t is not None

    def test_parameter_validation(self):
        with pytest.raises(BadParameter):
            gallery.wobble(0.2, 0, 1)
        with pytest.raises(BadParameter):
            gallery.wobble(-0.1, 1, 1)


class TestQuadPerturb:
    def test_reduces_to_mild_loop_at_one(self):
        g = gallery.quad_perturb(1.0)
        assert g.index == 1
        assert g.length < TWO_PI

    def test_length_shrinks_toward_lightlike_limit(self):
        grid = (0.05, 0.1, 0.25, 0.5, 0.75, 1.0)
        lengths = [gallery.quad_perturb(e).length for e in grid]
        assert all(a < b for a, b in zip(lengths, lengths[1:]))
        assert lengths[0] < 3.1  # already well below the smooth-loop scale

    def test_admissible_everywhere(self):
        for eps in (0.02, 0.3, 0.9):
            g = gallery.quad_perturb(eps)
            s = np.linspace(0.0, g.length, 512, endpoint=False)
            w_sq = (np.cosh(g.phi(s)) ** 2 * g.theta_prime(s) ** 2
                    - g.phi_prime(s) ** 2)
            assert np.all(w_sq > 0.0)

    def test_reflection_symmetries(self):
        # profile is even in theta and invariant under theta -> pi - theta,
        # so the embedded curve maps to itself under both plane reflections
        th = np.linspace(-np.pi, np.pi, 101)
        prof = gallery.quad_perturb_profile(th, 0.4)
        np.testing.assert_allclose(prof, gallery.quad_perturb_profile(-th, 0.4),
                                   atol=1e-12)
        np.testing.assert_allclose(prof,
                                   gallery.quad_perturb_profile(np.pi - th, 0.4),
                                   atol=1e-12)

    def test_profile_matches_embedded_points(self):
        g = gallery.quad_perturb(0.5)
        s = np.linspace(0.0, g.length, 64, endpoint=False)
        phi, theta = to_latlong(g.point(s))
        np.testing.assert_allclose(phi, gallery.quad_perturb_profile(theta, 0.5),
                                   atol=1e-9)

    def test_parameter_validation(self):
        for bad in (0.0, -0.5, 1.2):
            with pytest.raises(BadParameter):
                gallery.quad_perturb(bad)


class TestTrefoil:
    def test_certified_at_default_lift(self, trefoil_arc):
        rep = certify_strong_spacelike(trefoil_arc)
        assert rep.verdict
        assert winding_index(trefoil_arc) == 2

    def test_certified_at_cap(self):
        arc = reparametrize_arclength(
            gallery.trefoil_spacelike(gallery.TREFOIL_EPS_MAX), 2048)
        assert certify_strong_spacelike(arc, 2048).verdict

    def test_total_curvature_below_4pi(self, trefoil_arc):
        assert total_curvature(trefoil_arc) < 2.0 * TWO_PI

    def test_small_lift_projection_is_trefoil_diagram(self):
        # projection is independent of the lift; crossings sit where the
        # radius-angle diagram self-intersects
        c1 = gallery.trefoil_spacelike(0.01)
        c2 = gallery.trefoil_spacelike(0.5)
        t = np.linspace(0.0, TWO_PI, 64, endpoint=False)
        np.testing.assert_allclose(c1.point(t)[:, :2], c2.point(t)[:, :2],
                                   atol=1e-12)

    def test_lift_out_of_range(self):
        with pytest.raises(NotStrongSpacelike):
            gallery.trefoil_spacelike(gallery.TREFOIL_EPS_MAX + 0.05)
        with pytest.raises(BadParameter):
            gallery.trefoil_spacelike(0.0)


class TestPerturbedCircle:
    def test_seeds_yield_certified_index_one_loops(self):
        hits = 0
        for seed in range(8):
            curve = gallery.perturbed_circle(seed)
            arc = reparametrize_arclength(curve, 2048)
            if certify_strong_spacelike(arc, 2048).verdict:
                assert winding_index(arc) == 1
                assert total_curvature(arc) <= TWO_PI + 1e-9
                hits += 1
        assert hits >= 6

    def test_planar_variant_has_no_height(self):
        curve = gallery.perturbed_circle(3, planar=True)
        t = np.linspace(0.0, TWO_PI, 64)
        assert np.max(np.abs(curve.point(t)[:, 2])) == 0.0

    def test_deterministic(self):
        a = gallery.perturbed_circle(9)
        b = gallery.perturbed_circle(9)
        t = np.linspace(0.0, TWO_PI, 32)
        np.testing.assert_array_equal(a.point(t), b.point(t))
