import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from lorentz_crofton import (
    adapted_frame,
    apply_transform,
    geodesic_from_pole,
    intersection_count,
    intersection_counts_batch,
    lemma_threshold,
    minkowski_inner,
    random_orthochronous_transform,
    reparametrize_arclength,
    tangent_indicatrix,
    to_latlong,
)
from lorentz_crofton import gallery
from lorentz_crofton.desitter import latlong_point
from lorentz_crofton.errors import NotInH2, NotOnDeSitter, ZeroVector

TWO_PI = 2.0 * np.pi


class TestLatLong:
    def test_examples(self):
        phi, theta = to_latlong(np.array([1.0, 0.0, 0.0]))
        assert phi == 0.0 and theta == 0.0
        phi, theta = to_latlong(np.array([0.0, np.cosh(1.0), np.sinh(1.0)]))
        assert abs(phi - 1.0) < 1e-12 and abs(theta - np.pi / 2) < 1e-12
        p = latlong_point(0.5, 1.0)
        phi, theta = to_latlong(p)
        assert abs(phi - 0.5) < 1e-12 and abs(theta - 1.0) < 1e-12

    def test_off_sphere_rejected(self):
        with pytest.raises(NotOnDeSitter):
            to_latlong(np.array([2.0, 0.0, 0.0]))

    @given(st.floats(-2.0, 2.0), st.floats(0.0, TWO_PI, exclude_max=True))
    @settings(max_examples=80, deadline=None)
    def test_round_trip(self, phi, theta):
        p = latlong_point(phi, theta)
        phi2, theta2 = to_latlong(p)
        assert abs(phi2 - phi) < 1e-9
        assert abs(theta2 - theta) < 1e-9 or abs(abs(theta2 - theta) - TWO_PI) < 1e-9


class TestIndicatrix:
    def test_circle_gives_equator(self):
        for r in (1.0, 5.0):
            ind = tangent_indicatrix(reparametrize_arclength(gallery.circle(r)))
            assert ind.phi_abs_max == 0.0
            assert abs(ind.length - TWO_PI) < 1e-10
            assert ind.index == 1

    def test_clam_indicatrix(self, clam05_arc, clam05_ind):
        from lorentz_crofton import total_curvature
        assert clam05_ind.index == 2
        tc = total_curvature(clam05_arc)
        assert abs(clam05_ind.length - tc) / tc < 1e-6

    def test_unit_speed_identity(self, gallery_spherical):
        for g in gallery_spherical:
            assert g.unit_speed_residual < 1e-7
            s = np.linspace(0.0, g.length, 257, endpoint=False)
            resid = (np.cosh(g.phi(s)) ** 2 * g.theta_prime(s) ** 2
                     - g.phi_prime(s) ** 2 - 1.0)
            assert np.max(np.abs(resid)) < 1e-7

    def test_longitude_monotone_and_closes(self, gallery_spherical):
        for g in gallery_spherical:
            s = np.linspace(0.0, g.length, 257, endpoint=False)
            assert np.all(g.theta_prime(s) > 0.0)
            gap = g.theta(g.length - 1e-12) - g.theta(0.0) - TWO_PI * g.index
            assert abs(gap) < 1e-6


class TestAdaptedFrame:
    def test_equator_origin(self, equator_g):
        fr = adapted_frame(equator_g, 0.0)
        np.testing.assert_allclose(fr.e1, [1.0, 0.0, 0.0], atol=1e-14)
        np.testing.assert_allclose(fr.e2, [0.0, 1.0, 0.0], atol=1e-14)
        np.testing.assert_allclose(fr.e3, [0.0, 0.0, 1.0], atol=1e-14)
        assert abs(fr.tau) < 1e-14

    def test_gram_matrix(self, gallery_spherical):
        target = np.diag([1.0, 1.0, -1.0])
        for g in gallery_spherical:
            s = np.linspace(0.0, g.length, 64, endpoint=False)
            fr = adapted_frame(g, s)
            vecs = (fr.e1, fr.e2, fr.e3)
            for i in range(3):
                for j in range(3):
                    defect = minkowski_inner(vecs[i], vecs[j]) - target[i, j]
                    assert np.max(np.abs(defect)) < 1e-8

    def test_tau_matches_defining_relations(self, gallery_spherical):
        for g in gallery_spherical:
            s = np.linspace(0.0, g.length, 64, endpoint=False)
            tau = g.tau(s)
            assert np.max(np.abs(np.cosh(tau)
                                 - np.cosh(g.phi(s)) * g.theta_prime(s))) < 1e-7
            assert np.max(np.abs(np.sinh(tau) - g.phi_prime(s))) < 1e-7

    def test_structure_equations_by_differences(self, gallery_spherical):
        h = 1e-4
        for g in gallery_spherical:
            s = np.linspace(0.0, g.length, 24, endpoint=False) + 0.123
            p1, p2, p3 = g.frame(s + h)
            m1, m2, m3 = g.frame(s - h)
            e1, e2, e3 = g.frame(s)
            cth = (np.cosh(g.phi(s)) * g.theta_prime(s))[:, None]
            sth = (np.sinh(g.phi(s)) * g.theta_prime(s))[:, None]
            php = g.phi_prime(s)[:, None]
            assert np.max(np.abs((p1 - m1) / (2 * h) - (cth * e2 + php * e3))) < 1e-5
            assert np.max(np.abs((p2 - m2) / (2 * h) - (-cth * e1 + sth * e3))) < 1e-5
            assert np.max(np.abs((p3 - m3) / (2 * h) - (php * e1 + sth * e2))) < 1e-5


class TestPolarGeodesic:
    def test_vertical_pole_gives_equator(self):
        geo = geodesic_from_pole(np.array([0.0, 0.0, 1.0]))
        u = np.linspace(0.0, TWO_PI, 9)
        np.testing.assert_allclose(
            geo.point(u), np.stack([np.cos(u), np.sin(u), np.zeros_like(u)], axis=-1),
            atol=1e-14)

    def test_basis_choice_example(self):
        pole = np.array([0.0, np.sinh(1.0), np.cosh(1.0)])
        geo = geodesic_from_pole(pole)
        np.testing.assert_allclose(geo.basis_a, [1.0, 0.0, 0.0], atol=1e-14)
        np.testing.assert_allclose(geo.point(0.0), [1.0, 0.0, 0.0], atol=1e-14)

    @given(st.floats(0.0, 2.0), st.floats(0.0, TWO_PI, exclude_max=True),
           st.floats(0.0, TWO_PI, exclude_max=True))
    @settings(max_examples=60, deadline=None)
    def test_defining_properties(self, r, beta, u):
        pole = np.array([np.sinh(r) * np.cos(beta), np.sinh(r) * np.sin(beta),
                         np.cosh(r)])
        geo = geodesic_from_pole(pole)
        c = geo.point(u)
        assert abs(minkowski_inner(c, c) - 1.0) < 1e-9
        assert abs(minkowski_inner(c, pole)) < 1e-9

    def test_rejects_non_h2_pole(self):
        with pytest.raises(NotInH2):
            geodesic_from_pole(np.array([1.0, 0.0, 0.0]))
        with pytest.raises(NotInH2):
            geodesic_from_pole(np.array([0.0, 0.0, -1.0]))


class TestIntersectionCount:
    def test_equator_vs_boosted_pole(self, equator_g):
        pole = np.array([0.0, np.sinh(1.0), np.cosh(1.0)])
        res = intersection_count(equator_g, pole)
        assert res.count == 2 and not res.degenerate
        # zeros of sinh(1) sin(s) at s = 0 and pi, margin sinh(1)
        np.testing.assert_allclose(np.sort(res.locations % TWO_PI), [0.0, np.pi],
                                   atol=1e-9)
        assert abs(res.min_margin - np.sinh(1.0)) < 1e-9

    def test_equator_center_pole_degenerate(self, equator_g):
        res = intersection_count(equator_g, np.array([0.0, 0.0, 1.0]))
        assert res.degenerate

    def test_index2_wobble_spacelike_pole(self, wobble22_g):
        res = intersection_count(wobble22_g, np.array([0.0, 1.0, 0.0]))
        assert res.count == 4

    def test_zero_pole_rejected(self, equator_g):
        with pytest.raises(ZeroVector):
            intersection_count(equator_g, np.zeros(3))

    def test_spacelike_lightlike_poles_give_2i(self, gallery_spherical):
        rng = np.random.Generator(np.random.Philox(key=11))
        for g in gallery_spherical:
            beta = rng.uniform(0.0, TWO_PI, size=40)
            slope = rng.uniform(0.0, 1.0, size=40)
            slope[:10] = 1.0
            poles = np.stack([np.cos(beta), np.sin(beta), slope], axis=-1)
            counts, degen = intersection_counts_batch(g, poles)
            assert not np.any(degen)
            assert np.all(counts == 2 * g.index)

    def test_timelike_poles_below_threshold_give_2i(self, gallery_spherical):
        rng = np.random.Generator(np.random.Philox(key=12))
        for g in gallery_spherical:
            a_star = lemma_threshold(g)
            beta = rng.uniform(0.0, TWO_PI, size=100)
            slope = rng.uniform(1.0 + 1e-9, a_star, size=100)
            poles = np.stack([np.cos(beta), np.sin(beta), slope], axis=-1)
            counts, degen = intersection_counts_batch(g, poles)
            assert not np.any(degen)
            assert np.all(counts == 2 * g.index)

    def test_invariant_under_simultaneous_transform(self, wobble1_g):
        pole = np.array([0.3, -0.4, 1.3])
        base = intersection_count(wobble1_g, pole)
        for seed in (4, 9):
            m = random_orthochronous_transform(seed)
            moved = wobble1_g.transform(m)
            res = intersection_count(moved, apply_transform(m, pole))
            assert res.count == base.count
            assert res.degenerate == base.degenerate


class TestLemmaThreshold:
    def test_equator_capped(self, equator_g):
        assert lemma_threshold(equator_g) == 1e6

    def test_strictly_above_one(self, wobble1_g, quad05_g):
        assert lemma_threshold(wobble1_g) > 1.0
        assert lemma_threshold(quad05_g) > 1.0

    def test_monotone_zero_function_argument(self, gallery_spherical):
        # f_a(s) = theta(s) - arcsin(a tanh phi(s)) increases for a <= 1
        for g in gallery_spherical:
            s = np.linspace(0.0, g.length, 1024, endpoint=False)
            theta_p = g.theta_prime(s)
            phi = g.phi(s)
            phi_p = g.phi_prime(s)
            for a in (0.25, 0.5, 0.75, 1.0):
                denom = np.cosh(phi) * np.sqrt(np.cosh(phi) ** 2 / a ** 2
                                               - np.sinh(phi) ** 2)
                assert np.all(theta_p - phi_p / denom > 0.0)

    def test_fenchel_floor_for_indicatrices(self, clam05_ind, trefoil_ind):
        # closed-curve indicatrices meet every geodesic at least twice
        rng = np.random.Generator(np.random.Philox(key=21))
        for g in (clam05_ind, trefoil_ind):
            r = rng.uniform(0.05, 2.5, size=200)
            beta = rng.uniform(0.0, TWO_PI, size=200)
            poles = np.stack([np.sinh(r) * np.cos(beta), np.sinh(r) * np.sin(beta),
                              np.cosh(r)], axis=-1)
            counts, degen = intersection_counts_batch(g, poles)
            assert np.all(counts[~degen] >= 2)
