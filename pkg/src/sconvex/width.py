"""Lunes, width and thickness of spherical convex bodies.

The width of a body in the direction of a supporting hemisphere K is the
minimal thickness of a lune K cap K* containing the body.  For widths
below pi/2 this equals the maximal height of the boundary above bd(K),
which is what :func:`width_at` computes in closed form per segment;
:func:`width_by_lune_scan` is the direct definition-level reference the
fast path is validated against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import sphere
from .body import ArcSegment, ConvexBody, GeodesicSegment
from .errors import (
    InvalidLune,
    NotConstantWidthPoint,
    NotSupporting,
    ThicknessOutOfRegime,
    WidthOutOfRegime,
)
from .sphere import clamped_dot, dist, dot, unit

REGIME_EPS = 1e-9
TOUCH_EPS = 1e-6


class Lune(NamedTuple):
    """Intersection of the hemispheres with poles g and h."""

    g: np.ndarray
    h: np.ndarray


def lune_thickness(lune: Lune) -> float:
    """Thickness of a lune: pi minus the angle between its poles."""
    ang = dist(lune.g, lune.h)
    if ang < 1e-12 or ang > math.pi - 1e-12:
        raise InvalidLune("hemisphere poles coincident or antipodal")
    return math.pi - ang

def lune_midpoints(lune: Lune) -> tuple[np.ndarray, np.ndarray]:
    """Centers of the two semicircles bounding the lune.

    The first lies on the great circle of g, the second on that of h;
    their distance equals the lune thickness.
    """
    g, h = lune
    if not 1e-12 < dist(g, h) < math.pi - 1e-12:
        raise InvalidLune("hemisphere poles coincident or antipodal")
    m_g = unit(h - dot(h, g) * g)
    m_h = unit(g - dot(g, h) * h)
    return m_g, m_h


@dataclass(eq=False)
class ThicknessChord:
    """Arc joining the touch points of a thickness-realizing lune."""

    f: np.ndarray
    g: np.ndarray
    lune: Lune

    @property
    def length(self) -> float:
        return dist(self.f, self.g)


def _distance_extremes(body: ConvexBody, q) -> tuple[float, np.ndarray, float]:
    """(min distance, closest boundary point, max distance) from pole q."""
    arr = body.arrays
    best_d = math.inf
    best_p = None
    worst_d = -math.inf
    if len(arr.geo_idx):
        nq = arr.gN @ q
        gc_dist = np.arcsin(np.clip(np.abs(nq), 0.0, 1.0))
        w = q[None, :] - nq[:, None] * arr.gN
        wn = np.linalg.norm(w, axis=1)
        safe = wn > 1e-12
        w[safe] /= wn[safe][:, None]
        near_ok = safe & (np.einsum("ij,ij->i", np.cross(arr.gA, w), arr.gN) >= -1e-12) \
                       & (np.einsum("ij,ij->i", np.cross(w, arr.gB), arr.gN) >= -1e-12)
        far_ok = safe & (np.einsum("ij,ij->i", np.cross(arr.gA, -w), arr.gN) >= -1e-12) \
                      & (np.einsum("ij,ij->i", np.cross(-w, arr.gB), arr.gN) >= -1e-12)
        dA = np.arccos(np.clip(arr.gA @ q, -1.0, 1.0))
        dB = np.arccos(np.clip(arr.gB @ q, -1.0, 1.0))
        d_min = np.where(near_ok, gc_dist, np.minimum(dA, dB))
        d_max = np.where(far_ok, math.pi - gc_dist, np.maximum(dA, dB))
        k = int(np.argmin(d_min))
        if d_min[k] < best_d:
            best_d = float(d_min[k])
            best_p = w[k] if near_ok[k] else (arr.gA[k] if dA[k] <= dB[k] else arr.gB[k])
        worst_d = max(worst_d, float(np.max(d_max)))
    if len(arr.arc_idx):
        cq = arr.aC @ q
        d_c = np.arccos(np.clip(cq, -1.0, 1.0))
        u = q[None, :] - cq[:, None] * arr.aC
        un = np.linalg.norm(u, axis=1)
        safe = un > 1e-12
        u[safe] /= un[safe][:, None]
        near = arr.aCos[:, None] * arr.aC + arr.aSin[:, None] * u
        far = arr.aCos[:, None] * arr.aC - arr.aSin[:, None] * u
        two_pi = 2.0 * math.pi
        phi_near = np.arctan2(np.einsum("ij,ij->i", near, arr.aE2),
                              np.einsum("ij,ij->i", near, arr.aE1)) % two_pi
        phi_far = np.arctan2(np.einsum("ij,ij->i", far, arr.aE2),
                             np.einsum("ij,ij->i", far, arr.aE1)) % two_pi
        slack = 1e-9
        near_ok = safe & ((phi_near <= arr.aSweep + slack) | (phi_near >= two_pi - slack))
        far_ok = safe & ((phi_far <= arr.aSweep + slack) | (phi_far >= two_pi - slack))
        dA = np.arccos(np.clip(arr.aA @ q, -1.0, 1.0))
        dB = np.arccos(np.clip(arr.aB @ q, -1.0, 1.0))
        d_ring = np.abs(d_c - arr.aR)
        d_min = np.where(near_ok, d_ring, np.minimum(dA, dB))
        d_far = np.minimum(d_c + arr.aR, two_pi - d_c - arr.aR)
        d_max = np.where(far_ok, d_far, np.maximum(dA, dB))
        k = int(np.argmin(d_min))
        if d_min[k] < best_d:
            best_d = float(d_min[k])
            best_p = near[k] if near_ok[k] else (arr.aA[k] if dA[k] <= dB[k] else arr.aB[k])
        worst_d = max(worst_d, float(np.max(d_max)))
    return best_d, np.asarray(best_p, dtype=float), worst_d


def width_at(body: ConvexBody, pole, check_support: bool = True) -> tuple[float, np.ndarray]:
    """Width of the body for the supporting hemisphere with this pole.

    Returns (width, far point): the far point is the boundary point of
    maximal height above the supporting great circle, i.e. the opposite
    touch point of the minimal lune.
    """
    q = np.asarray(pole, dtype=float)
    d_min, far, d_max = _distance_extremes(body, q)
    if check_support:
        lowest = math.pi / 2.0 - d_max
        if lowest < -REGIME_EPS:
            raise NotSupporting(f"body leaves the hemisphere by {-lowest:.3e}")
        if lowest > TOUCH_EPS:
            raise NotSupporting(f"hemisphere boundary misses the body by {lowest:.3e}")
    width = math.pi / 2.0 - d_min
    if width >= math.pi / 2.0 - REGIME_EPS:
        raise WidthOutOfRegime(f"width {width} reaches pi/2")
    return width, far


def supporting_pole_candidates(body: ConvexBody, n_boundary: int = 1024,
                               n_fan: int = 8) -> np.ndarray:
    """Supporting poles sampled over the whole boundary.

    Right/left poles at uniformly spaced boundary points plus, at every
    junction with a genuine tangent jump, a fan of interpolated poles
    (the arc of supporting directions at a vertex).
    """
    poles: list[np.ndarray] = []
    for k in range(n_boundary):
        pair = body.support_pair_at_param(k / n_boundary)
        poles.append(pair.right)
        if dist(pair.right, pair.left) > 1e-12:
            poles.append(pair.left)
    n = len(body.segments)
    for i in range(n):
        v = body.segments[i].end
        n_r = body.segments[i].support_pole_at(v)
        n_l = body.segments[(i + 1) % n].support_pole_at(v)
        if dist(n_r, n_l) <= 1e-12:
            continue
        for j in range(n_fan + 1):
            poles.append(sphere.arc_point(n_r, n_l, j / n_fan))
    return np.array(poles)


class LuneScan:
    """Per-body candidate set for the definition-level width reference.

    Holds supporting-pole candidates with the handles needed to polish
    the best one (boundary parameter, or vertex fan parameter), plus the
    dense boundary sample used for the containment filter.
    """

    def __init__(self, body: ConvexBody, n_boundary: int = 512, n_fan: int = 16,
                 n_samples: int = 512):
        self.body = body
        self.samples = body.sample_boundary(n_samples)
        poles: list[np.ndarray] = []
        handles: list[tuple] = []
        for k in range(n_boundary):
            s = k / n_boundary
            pair = body.support_pair_at_param(s)
            poles.append(pair.right)
            handles.append(("boundary", s, 1.0 / n_boundary))
            if dist(pair.right, pair.left) > 1e-12:
                poles.append(pair.left)
                handles.append(("boundary", s, 1.0 / n_boundary))
        n = len(body.segments)
        for i in range(n):
            v = body.segments[i].end
            n_r = body.segments[i].support_pole_at(v)
            n_l = body.segments[(i + 1) % n].support_pole_at(v)
            if dist(n_r, n_l) <= 1e-12:
                continue
            for j in range(n_fan + 1):
                poles.append(sphere.arc_point(n_r, n_l, j / n_fan))
                handles.append(("fan", n_r, n_l, j / n_fan, 1.0 / n_fan))
        self.poles = np.array(poles)
        self.handles = handles
        self.contained = np.min(self.samples @ self.poles.T, axis=0) >= -REGIME_EPS

    def pole_at(self, handle, x: float) -> Optional[np.ndarray]:
        if handle[0] == "boundary":
            return self.body.support_pair_at_param(x % 1.0).right
        return sphere.arc_point(handle[1], handle[2], min(max(x, 0.0), 1.0))

    def thickness_of(self, q, cand) -> float:
        if float(np.min(self.samples @ cand)) < -REGIME_EPS:
            return math.inf
        return math.pi - dist(cand, q)


def width_by_lune_scan(body: ConvexBody, pole, scan: Optional[LuneScan] = None,
                       refine: bool = True) -> float:
    """Reference width: minimum lune thickness over supporting hemispheres.

    Enumerates candidate poles from a dense boundary sample (with vertex
    fans), keeps those whose hemisphere contains the body, minimizes the
    lune thickness pi - angle(pole, candidate), then polishes the best
    candidate's parameter by golden section on the same definitional
    objective.  Deliberately independent of the closed-form route in
    :func:`width_at`.
    """
    q = unit(pole)
    if scan is None:
        scan = LuneScan(body)
    if not scan.contained.any():
        raise NotSupporting("no containing candidate hemisphere found")
    vals = np.where(scan.contained,
                    math.pi - np.arccos(np.clip(scan.poles @ q, -1.0, 1.0)),
                    np.inf)
    k = int(np.argmin(vals))
    best = float(vals[k])
    if not refine:
        return best
    handle = scan.handles[k]
    if handle[0] == "boundary":
        x0, step = handle[1], handle[2]
    else:
        x0, step = handle[3], handle[4]

    def f(x: float) -> float:
        cand = scan.pole_at(handle, x)
        return scan.thickness_of(q, cand)

    _, refined = _golden_min(f, x0 - step, x0 + step)
    return min(best, refined)


def _golden_min(f, a: float, b: float, value_tol: float = 1e-10,
                max_iter: int = 200) -> tuple[float, float]:
    """Golden-section minimization of f on [a, b]; returns (x, f(x))."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = f(x1), f(x2)
    last = min(f1, f2)
    for _ in range(max_iter):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = f(x2)
        cur = min(f1, f2)
        if abs(last - cur) < value_tol and (b - a) < 1e-9:
            break
        last = cur
    return (x1, f1) if f1 <= f2 else (x2, f2)


def thickness(body: ConvexBody, n_scan: int = 720,
              n_fan: int = 8) -> tuple[float, ThicknessChord]:
    """Thickness: the minimum width over all supporting hemispheres.

    Coarse scan over poles supporting at uniformly spaced boundary points
    plus vertex fans, then golden-section refinement of the boundary (or
    fan) parameter around the best candidate.  Ties break toward the
    smallest boundary parameter, which makes the realizing chord
    deterministic.
    """
    def width_of_pole(pole) -> float:
        try:
            return width_at(body, pole)[0]
        except WidthOutOfRegime:
            return math.inf

    best = (math.inf, None)  # (width, refinement closure)
    for k in range(n_scan):
        s = k / n_scan
        pole = body.support_pair_at_param(s).right
        w = width_of_pole(pole)
        if w < best[0] - 1e-15:
            best = (w, ("boundary", s))
    n = len(body.segments)
    for i in range(n):
        v = body.segments[i].end
        n_r = body.segments[i].support_pole_at(v)
        n_l = body.segments[(i + 1) % n].support_pole_at(v)
        if dist(n_r, n_l) <= 1e-12:
            continue
        for j in range(n_fan + 1):
            w = width_of_pole(sphere.arc_point(n_r, n_l, j / n_fan))
            if w < best[0] - 1e-15:
                best = (w, ("fan", i, j / n_fan, n_r, n_l))
    if best[1] is None:
        raise ThicknessOutOfRegime("no supporting direction with width below pi/2")

    if best[1][0] == "boundary":
        s0 = best[1][1]
        def f(s: float) -> float:
            return width_of_pole(body.support_pair_at_param(s % 1.0).right)
        s_best, w_best = _golden_min(f, s0 - 1.0 / n_scan, s0 + 1.0 / n_scan)
        pole = body.support_pair_at_param(s_best % 1.0).right
    else:
        _, i, t0, n_r, n_l = best[1]
        def f(t: float) -> float:
            return width_of_pole(sphere.arc_point(n_r, n_l, min(max(t, 0.0), 1.0)))
        t_best, w_best = _golden_min(f, max(t0 - 1.0 / n_fan, 0.0), min(t0 + 1.0 / n_fan, 1.0))
        pole = sphere.arc_point(n_r, n_l, min(max(t_best, 0.0), 1.0))
    if w_best > best[0]:
        w_best = best[0]
        pole = (body.support_pair_at_param(best[1][1]).right
                if best[1][0] == "boundary"
                else sphere.arc_point(best[1][3], best[1][4], best[1][2]))

    delta, far = width_at(body, pole)
    if delta >= math.pi / 2.0 - REGIME_EPS:
        raise ThicknessOutOfRegime(f"thickness {delta} reaches pi/2")
    touch = unit(far - dot(far, pole) * np.asarray(pole, dtype=float))
    k_star = sphere.tangent_at(far, touch)
    chord = ThicknessChord(f=touch, g=far, lune=Lune(np.asarray(pole, dtype=float), k_star))
    return delta, chord


def opposite_point(body: ConvexBody, f, side: str = "right",
                   delta: Optional[float] = None) -> np.ndarray:
    """Touch point of the minimal lune opposite boundary point f.

    Only defined on constant-width portions of the boundary: raises
    NotConstantWidthPoint when the width at f's supporting pole exceeds
    the body thickness (f lies on an arm).
    """
    pair = body.supporting_poles_at(f)
    return _opposite_from_pair(body, pair, side, delta)


def opposite_point_at_param(body: ConvexBody, s: float, side: str = "right",
                            delta: Optional[float] = None) -> np.ndarray:
    """Same as :func:`opposite_point` for a boundary parameter."""
    pair = body.support_pair_at_param(s)
    return _opposite_from_pair(body, pair, side, delta)


def _opposite_from_pair(body, pair, side, delta) -> np.ndarray:
    pole = pair.right if side == "right" else pair.left
    if delta is None:
        delta = thickness(body)[0]
    w, far = width_at(body, pole)
    if w > delta + 1e-8:
        raise NotConstantWidthPoint(f"width {w} exceeds thickness {delta} at this point")
    return far


def is_constant_width(body: ConvexBody, tol: float,
                      n_boundary: int = 1024, n_fan: int = 8) -> tuple[bool, float]:
    """Test whether all supporting directions give the same width.

    Samples supporting poles over the whole boundary (vertex fans
    included) and reports the maximal |width - thickness| deviation.
    """
    delta = thickness(body)[0]
    poles = supporting_pole_candidates(body, n_boundary=n_boundary, n_fan=n_fan)
    dev = 0.0
    for pole in poles:
        w, _ = width_at(body, pole)
        dev = max(dev, abs(w - delta))
    return dev <= tol, dev
