"""Closed-form primitives on the unit sphere S2.

Points are unit 3-vectors (numpy arrays, float64).  A great circle is
represented by its pole: the circle is the set of points at distance pi/2
from the pole, and the closed hemisphere it bounds is everything at
distance <= pi/2.  All angles and distances are radians.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import CoincidentCircles, DegeneratePair, OutOfDomain, OutsideHemisphere

# Cross products below this norm mean "same or antipodal point".
DEGENERACY_EPS = 1e-12

_AXES = np.eye(3)


def unit(v) -> np.ndarray:
    """Normalize a 3-vector to the sphere; rejects near-zero input."""
    v = np.asarray(v, dtype=float)
    n = math.sqrt(float(v @ v))
    if n < DEGENERACY_EPS:
        raise DegeneratePair("cannot normalize a near-zero vector")
    return v / n


def sphere_point(x: float, y: float, z: float) -> np.ndarray:
    return unit((x, y, z))


def dot(a, b) -> float:
    return float(np.dot(a, b))


def clamped_dot(a, b) -> float:
    return min(1.0, max(-1.0, float(np.dot(a, b))))


def dist(a, b) -> float:
    """Angular distance between two unit vectors, in [0, pi].

    Uses the chord formula on whichever end is closer, which stays
    accurate where acos(dot) loses half its digits (near 0 and pi).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if float(a @ b) >= 0.0:
        d = a - b
        return 2.0 * math.asin(min(1.0, 0.5 * math.sqrt(float(d @ d))))
    s = a + b
    return math.pi - 2.0 * math.asin(min(1.0, 0.5 * math.sqrt(float(s @ s))))


def great_circle_pole(a, b) -> np.ndarray:
    """Pole of the great circle through a and b.

    Traveling the shorter arc a -> b keeps the pole on the left.
    """
    c = np.cross(a, b)
    n = math.sqrt(float(c @ c))
    if n < DEGENERACY_EPS:
        raise DegeneratePair("points equal or antipodal; great circle not unique")
    return c / n


def arc_point(a, b, t: float) -> np.ndarray:
    """Point at fraction t of the shorter great-circle arc from a to b."""
    omega = dist(a, b)
    if omega > math.pi - DEGENERACY_EPS:
        raise DegeneratePair("antipodal endpoints; shorter arc not unique")
    if omega < DEGENERACY_EPS:
        return np.array(a, dtype=float)
    s = math.sin(omega)
    return (math.sin((1.0 - t) * omega) * np.asarray(a, dtype=float)
            + math.sin(t * omega) * np.asarray(b, dtype=float)) / s


def tangent_at(base, target) -> np.ndarray:
    """Unit tangent at `base` pointing along the arc toward `target`."""
    t = np.asarray(target, dtype=float) - dot(target, base) * np.asarray(base, dtype=float)
    n = math.sqrt(float(t @ t))
    if n < DEGENERACY_EPS:
        raise DegeneratePair("target equal or antipodal to base point")
    return t / n


def tangent_basis(center) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal basis (e1, e2) of the tangent plane at center.

    (e1, e2, center) is right-handed, so +angle in this basis is
    counterclockwise seen from outside the sphere.
    """
    c = np.asarray(center, dtype=float)
    ref = _AXES[int(np.argmin(np.abs(c)))]
    e1 = unit(ref - dot(ref, c) * c)
    e2 = unit(np.cross(c, e1))
    return e1, e2


def signed_height(p, pole) -> float:
    """Height of p above the great circle with the given pole.

    pi/2 - dist(p, pole): positive strictly inside the hemisphere, zero on
    its bounding circle, negative outside.
    """
    return math.pi / 2.0 - dist(p, pole)


def angle_at(v, p, q) -> float:
    """Angle at vertex v between the arcs toward p and toward q, in [0, pi]."""
    tp = tangent_at(v, p)
    tq = tangent_at(v, q)
    return math.acos(clamped_dot(tp, tq))


def signed_angle_at(v, p, q) -> float:
    """Oriented angle at v from the arc toward p to the arc toward q.

    Positive when the rotation p -> q is counterclockwise seen from
    outside the sphere at v.  Range (-pi, pi].
    """
    tp = tangent_at(v, p)
    tq = tangent_at(v, q)
    return math.atan2(dot(np.cross(tp, tq), v), clamped_dot(tp, tq))


def circle_circle_intersection(c1, r1: float, c2, r2: float) -> list[np.ndarray]:
    """Intersection points of two circles dist(x,ci)=ri on the sphere.

    Returns 0, 1 or 2 unit vectors; with two, the first lies on the
    positive side of the pole c1 x c2.  The solver expands x in the
    {c1, c2, c1 x c2} frame, which is stable away from coincident or
    antipodal centers.
    """
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    cross = np.cross(c1, c2)
    cross_norm2 = float(cross @ cross)
    if cross_norm2 < DEGENERACY_EPS ** 2 and dot(c1, c2) > 0:
        if abs(r1 - r2) <= DEGENERACY_EPS:
            raise CoincidentCircles("identical circles intersect everywhere")
        return []
    cos_t = clamped_dot(c1, c2)
    sin2_t = 1.0 - cos_t * cos_t
    k1 = math.cos(r1)
    k2 = math.cos(r2)
    a1 = (k1 - k2 * cos_t) / sin2_t
    a2 = (k2 - k1 * cos_t) / sin2_t
    base = a1 * c1 + a2 * c2
    beta2 = 1.0 - float(base @ base)
    if beta2 < -1e-12:
        return []
    if beta2 <= 1e-12:
        return [unit(base)]
    beta = math.sqrt(beta2) / math.sqrt(cross_norm2)
    return [unit(base + beta * cross), unit(base - beta * cross)]


def closest_point_on_geodesic_arc(p, a, b) -> np.ndarray:
    """Point of the shorter arc ab nearest to p."""
    n = great_circle_pole(a, b)
    w = np.asarray(p, dtype=float) - dot(p, n) * n
    wn = math.sqrt(float(w @ w))
    if wn < DEGENERACY_EPS:
        # p is a pole of the arc's great circle: every arc point is at pi/2
        return np.array(a, dtype=float)
    w = w / wn
    if dot(np.cross(a, w), n) >= -DEGENERACY_EPS and dot(np.cross(w, b), n) >= -DEGENERACY_EPS:
        return w
    return np.array(a if dist(p, a) <= dist(p, b) else b, dtype=float)


def dist_point_to_geodesic_arc(p, a, b) -> float:
    """Distance from p to the shorter great-circle arc ab."""
    return dist(p, closest_point_on_geodesic_arc(p, a, b))


def apex_to_chord_bound(chord_len: float, apex_angle: float) -> float:
    """Upper bound on the distance from a triangle apex to its base arc.

    For a spherical triangle with base of length `chord_len` and apex
    angle `apex_angle` whose apex foot falls inside the base, the apex is
    at distance at most arcsin(tan(chord_len/2) / tan(apex_angle/2)).
    """
    if not 0.0 < chord_len < math.pi:
        raise OutOfDomain(f"chord length {chord_len} outside (0, pi)")
    if not 0.0 < apex_angle < math.pi:
        raise OutOfDomain(f"apex angle {apex_angle} outside (0, pi)")
    ratio = math.tan(chord_len / 2.0) / math.tan(apex_angle / 2.0)
    if ratio > 1.0 + 1e-15:
        raise OutOfDomain(f"no triangle with chord {chord_len} and apex {apex_angle}")
    return math.asin(min(ratio, 1.0))


def gnomonic_project(p, center) -> tuple[float, float]:
    """Central projection of p onto the tangent plane at center.

    Maps great circles to straight lines; defined on the open hemisphere
    around center only.
    """
    d = dot(p, center)
    if d <= 1e-9:
        raise OutsideHemisphere("point not strictly inside the projection hemisphere")
    e1, e2 = tangent_basis(center)
    q = np.asarray(p, dtype=float) / d
    return float(q @ e1), float(q @ e2)


def gnomonic_unproject(xy, center) -> np.ndarray:
    """Inverse of gnomonic_project for the same center."""
    e1, e2 = tangent_basis(center)
    return unit(np.asarray(center, dtype=float) + xy[0] * e1 + xy[1] * e2)
