import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sconvex import sphere
from sconvex.errors import CoincidentCircles, DegeneratePair, OutOfDomain, OutsideHemisphere

EX = np.array([1.0, 0.0, 0.0])
EY = np.array([0.0, 1.0, 0.0])
EZ = np.array([0.0, 0.0, 1.0])


def random_units(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


class TestDist:
    def test_orthogonal(self):
        assert sphere.dist(EX, EY) == pytest.approx(math.pi / 2, abs=1e-15)

    def test_identity(self):
        assert sphere.dist(EX, EX) == 0.0

    def test_antipodes(self):
        assert sphere.dist(EX, -EX) == pytest.approx(math.pi, abs=1e-15)

    def test_symmetry_and_triangle_inequality(self):
        rng = np.random.default_rng(1)
        a = random_units(rng, 10_000)
        b = random_units(rng, 10_000)
        c = random_units(rng, 10_000)
        for i in range(0, 10_000, 997):
            d_ab = sphere.dist(a[i], b[i])
            assert d_ab == sphere.dist(b[i], a[i])
        ab = 2 * np.arcsin(np.clip(np.linalg.norm(a - b, axis=1) / 2, 0, 1))
        bc = 2 * np.arcsin(np.clip(np.linalg.norm(b - c, axis=1) / 2, 0, 1))
        ac = 2 * np.arcsin(np.clip(np.linalg.norm(a - c, axis=1) / 2, 0, 1))
        assert np.all(ac <= ab + bc + 1e-12)

    def test_resolves_tiny_separations(self):
        # acos(dot) cannot see below ~1e-8; the chord form can
        p = sphere.unit((1.0, 1e-12, 0.0))
        assert sphere.dist(EX, p) == pytest.approx(1e-12, rel=1e-3)


class TestGreatCircle:
    def test_coordinate_axes(self):
        np.testing.assert_allclose(sphere.great_circle_pole(EX, EY), EZ, atol=1e-15)

    def test_antipodal_rejected(self):
        with pytest.raises(DegeneratePair):
            sphere.great_circle_pole(EX, -EX)

    def test_derived_sign_convention(self):
        b = np.array([1.0, 0.0, 1.0]) / math.sqrt(2)
        np.testing.assert_allclose(sphere.great_circle_pole(EX, b), -EY, atol=1e-15)

    def test_pole_on_left_of_travel(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            a, b = random_units(rng, 2)
            if sphere.dist(a, b) > math.pi - 0.1:
                continue
            n = sphere.great_circle_pole(a, b)
            t = sphere.tangent_at(a, b)
            left = np.cross(n, a)  # left of travel equals pole x position
            assert float(t @ left) < 1e-12 or float(np.cross(a, t) @ n) > 0


class TestArcPoint:
    def test_endpoints(self):
        np.testing.assert_allclose(sphere.arc_point(EX, EY, 0.0), EX, atol=1e-15)
        np.testing.assert_allclose(sphere.arc_point(EX, EY, 1.0), EY, atol=1e-15)

    def test_midpoint_symmetry(self):
        mid = sphere.arc_point(EX, EY, 0.5)
        np.testing.assert_allclose(mid, np.array([1.0, 1.0, 0.0]) / math.sqrt(2),
                                   atol=1e-15)

    def test_antipodal_rejected(self):
        with pytest.raises(DegeneratePair):
            sphere.arc_point(EZ, -EZ, 0.3)

    def test_proportional_distance(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            a, b = random_units(rng, 2)
            if sphere.dist(a, b) > 3.0:
                continue
            t = rng.uniform()
            p = sphere.arc_point(a, b, t)
            assert sphere.dist(a, p) == pytest.approx(t * sphere.dist(a, b), abs=1e-12)


class TestCircleIntersection:
    def test_two_equators_meet_at_poles(self):
        pts = sphere.circle_circle_intersection(EX, math.pi / 2, EY, math.pi / 2)
        assert len(pts) == 2
        np.testing.assert_allclose(pts[0], EZ, atol=1e-12)  # positive side of c1 x c2
        np.testing.assert_allclose(pts[1], -EZ, atol=1e-12)

    def test_derived_example(self):
        c2 = np.array([0.5, math.sqrt(3) / 2, 0.0])
        pts = sphere.circle_circle_intersection(EX, math.pi / 3, c2, math.pi / 3)
        assert len(pts) == 2
        expected_hi = np.array([0.5, math.sqrt(3) / 6, math.sqrt(6) / 3])
        np.testing.assert_allclose(pts[0], expected_hi, atol=1e-12)
        np.testing.assert_allclose(pts[1], expected_hi * np.array([1, 1, -1]), atol=1e-12)

    def test_separated_caps(self):
        assert sphere.circle_circle_intersection(EX, 0.2, EY, 0.2) == []

    def test_coincident(self):
        with pytest.raises(CoincidentCircles):
            sphere.circle_circle_intersection(EX, 0.4, EX, 0.4)
        assert sphere.circle_circle_intersection(EX, 0.4, EX, 0.6) == []

    def test_constraints_and_mirror_symmetry(self):
        rng = np.random.default_rng(4)
        done = 0
        while done < 200:
            c1, c2 = random_units(rng, 2)
            theta = sphere.dist(c1, c2)
            if theta < 0.05 or theta > math.pi - 0.05:
                continue
            r1 = rng.uniform(0.05, math.pi / 2 - 0.01)
            r2 = rng.uniform(0.05, math.pi / 2 - 0.01)
            pts = sphere.circle_circle_intersection(c1, r1, c2, r2)
            for x in pts:
                assert abs(float(x @ c1) - math.cos(r1)) < 1e-10
                assert abs(float(x @ c2) - math.cos(r2)) < 1e-10
                assert abs(np.linalg.norm(x) - 1.0) < 1e-12
            if len(pts) == 2:
                # mirror images across the great circle through c1, c2
                n = sphere.great_circle_pole(c1, c2)
                h0 = float(pts[0] @ n)
                h1 = float(pts[1] @ n)
                assert h0 == pytest.approx(-h1, abs=1e-10)
                assert h0 >= 0.0
            done += 1


class TestHeightsAndAngles:
    def test_signed_height_at_pole(self):
        assert sphere.signed_height(EZ, EZ) == pytest.approx(math.pi / 2, abs=1e-15)

    def test_signed_height_on_circle(self):
        assert sphere.signed_height(EX, EZ) == pytest.approx(0.0, abs=1e-15)

    def test_signed_height_derived(self):
        pole = np.array([0.0, 1.0, 1.0]) / math.sqrt(2)
        assert sphere.signed_height(EZ, pole) == pytest.approx(math.pi / 4, abs=1e-12)

    def test_point_to_arc_trivial(self):
        assert sphere.dist_point_to_geodesic_arc(EX, EX, EY) == pytest.approx(0, abs=1e-12)
        assert sphere.dist_point_to_geodesic_arc(EZ, EX, EY) == pytest.approx(
            math.pi / 2, abs=1e-12)

    def test_point_to_arc_foot_outside(self):
        assert sphere.dist_point_to_geodesic_arc(-EX, EX, EY) == pytest.approx(
            math.pi / 2, abs=1e-12)

    def test_point_to_arc_matches_dense_scan(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            a, b, p = random_units(rng, 3)
            if sphere.dist(a, b) > 3.0:
                continue
            d = sphere.dist_point_to_geodesic_arc(p, a, b)
            brute = min(sphere.dist(p, sphere.arc_point(a, b, t))
                        for t in np.linspace(0, 1, 400))
            assert d <= brute + 1e-12
            assert d >= brute - 1e-4  # scan resolution

    def test_octant_angles(self):
        for v, p, q in [(EX, EY, EZ), (EY, EZ, EX), (EZ, EX, EY)]:
            assert sphere.angle_at(v, p, q) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_collinear_and_opposite(self):
        p = sphere.arc_point(EX, EY, 0.3)
        q = sphere.arc_point(EX, EY, 0.8)
        assert sphere.angle_at(p, q, sphere.arc_point(p, q, 2.0)) == pytest.approx(
            0.0, abs=1e-6)
        assert sphere.angle_at(p, EX, EY) == pytest.approx(math.pi, abs=1e-12)

    def test_signed_angle_orientation(self):
        # rotating from +x toward +y around +z is counterclockwise
        assert sphere.signed_angle_at(EZ, EX, EY) == pytest.approx(math.pi / 2, abs=1e-12)
        assert sphere.signed_angle_at(EZ, EY, EX) == pytest.approx(-math.pi / 2, abs=1e-12)


class TestApexBound:
    def test_right_angle_case(self):
        assert sphere.apex_to_chord_bound(math.pi / 2, math.pi / 2) == pytest.approx(
            math.pi / 2, abs=1e-12)

    def test_wide_apex_goes_to_zero(self):
        assert sphere.apex_to_chord_bound(0.3, math.pi - 1e-9) == pytest.approx(
            0.0, abs=1e-6)

    def test_frozen_value_and_equality_case(self):
        # symmetric triangle with |ab| = 0.2 and apex angle 2.0 built from
        # the right-triangle identity sin(h) * tan(A/2) = tan(L/2)
        bound = sphere.apex_to_chord_bound(0.2, 2.0)
        assert bound == pytest.approx(0.0644688006090323, abs=1e-14)
        length, apex_angle = 0.2, 2.0
        h = math.asin(math.tan(length / 2) / math.tan(apex_angle / 2))
        a = sphere.unit((math.cos(length / 2), -math.sin(length / 2), 0.0))
        b = sphere.unit((math.cos(length / 2), math.sin(length / 2), 0.0))
        d = np.array([math.cos(h), 0.0, math.sin(h)])
        assert sphere.angle_at(d, a, b) == pytest.approx(apex_angle, abs=1e-12)
        assert sphere.dist_point_to_geodesic_arc(d, a, b) == pytest.approx(h, abs=1e-12)
        assert h <= bound + 1e-15

    def test_monotone_grid(self):
        ls = np.linspace(0.05, 1.2, 12)
        angs = np.linspace(1.4, 3.0, 12)
        for ang in angs:
            vals = [sphere.apex_to_chord_bound(L, ang) for L in ls]
            assert all(x < y for x, y in zip(vals, vals[1:]))
        for L in ls:
            vals = [sphere.apex_to_chord_bound(L, ang) for ang in angs]
            assert all(x > y for x, y in zip(vals, vals[1:]))

    def test_out_of_domain(self):
        with pytest.raises(OutOfDomain):
            sphere.apex_to_chord_bound(1.0, 0.3)


@st.composite
def cap_points(draw, max_ang=1.0):
    ang = draw(st.floats(0.0, max_ang))
    az = draw(st.floats(0.0, 2.0 * math.pi))
    return np.array([math.sin(ang) * math.cos(az),
                     math.sin(ang) * math.sin(az),
                     math.cos(ang)])


class TestGnomonic:
    def test_center_maps_to_origin(self):
        assert sphere.gnomonic_project(EZ, EZ) == pytest.approx((0.0, 0.0), abs=1e-15)

    def test_equator_rejected(self):
        with pytest.raises(OutsideHemisphere):
            sphere.gnomonic_project(EX, EZ)

    @settings(max_examples=200, deadline=None)
    @given(cap_points())
    def test_round_trip(self, p):
        xy = sphere.gnomonic_project(p, EZ)
        np.testing.assert_allclose(sphere.gnomonic_unproject(xy, EZ), p, atol=1e-12)

    def test_arcs_map_to_segments(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            ang_a, ang_b = rng.uniform(0, 1.0, 2)
            az_a, az_b = rng.uniform(0, 2 * math.pi, 2)
            a = np.array([math.sin(ang_a) * math.cos(az_a),
                          math.sin(ang_a) * math.sin(az_a), math.cos(ang_a)])
            b = np.array([math.sin(ang_b) * math.cos(az_b),
                          math.sin(ang_b) * math.sin(az_b), math.cos(ang_b)])
            t = rng.uniform()
            pa = np.array(sphere.gnomonic_project(a, EZ))
            pb = np.array(sphere.gnomonic_project(b, EZ))
            pm = np.array(sphere.gnomonic_project(sphere.arc_point(a, b, t), EZ))
            seg = pb - pa
            ln = np.linalg.norm(seg)
            if ln < 1e-12:
                continue
            off = pm - pa
            cross = abs(off[0] * seg[1] - off[1] * seg[0]) / ln
            along = float(off @ seg) / ln
            assert cross < 1e-9
            assert -1e-9 <= along <= ln + 1e-9
