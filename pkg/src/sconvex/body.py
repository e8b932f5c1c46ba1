"""Boundary representation of spherical convex bodies.

A body is a closed counterclockwise chain of segments, each either a
geodesic (shorter great-circle arc) or a circular arc of radius below
pi/2.  Arcs are stored with their traversal sense about the center axis;
on a valid convex boundary every arc is traversed by positive rotation
about its center (the center lies on the interior side).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional, Union

import numpy as np

from . import sphere
from .errors import (
    DegenerateInput,
    InvalidBody,
    NoCommonHemisphere,
    NotOnBoundary,
)
from .sphere import dist, dot, unit

# Chain closure / arc endpoint consistency.
CHAIN_EPS = 1e-10
# Looser tolerance for support and membership queries.
SUPPORT_EPS = 1e-9


@dataclass(eq=False)
class GeodesicSegment:
    """Shorter great-circle arc from a to b."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=float)
        self.b = np.asarray(self.b, dtype=float)
        if dist(self.a, self.b) > math.pi - 1e-9:
            raise InvalidBody("geodesic segment endpoints are antipodal")
        if dist(self.a, self.b) < 1e-12:
            raise InvalidBody("geodesic segment has zero length")

    @cached_property
    def pole(self) -> np.ndarray:
        return sphere.great_circle_pole(self.a, self.b)

    @cached_property
    def length(self) -> float:
        return dist(self.a, self.b)

    @property
    def start(self) -> np.ndarray:
        return self.a

    @property
    def end(self) -> np.ndarray:
        return self.b

    def point_at(self, t: float) -> np.ndarray:
        if t <= 0.0:
            return self.a
        if t >= 1.0:
            return self.b
        return sphere.arc_point(self.a, self.b, t)

    def tangent_at(self, p) -> np.ndarray:
        """Unit tangent at boundary point p in the traversal direction."""
        return unit(np.cross(self.pole, p))

    def support_pole_at(self, p) -> np.ndarray:
        return self.pole

    def local_param(self, p) -> float:
        return min(1.0, max(0.0, dist(self.a, p) / self.length))

    def closest_point(self, p) -> np.ndarray:
        return sphere.closest_point_on_geodesic_arc(p, self.a, self.b)

    def distance_to(self, p) -> float:
        return dist(p, self.closest_point(p))

    def closest_points(self, P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized closest point and distance for rows of P."""
        h = P @ self.pole
        W = P - h[:, None] * self.pole
        wn = np.linalg.norm(W, axis=1)
        safe = wn > 1e-12
        W[safe] /= wn[safe][:, None]
        within = safe & (np.cross(self.a, W) @ self.pole >= -1e-12) \
                      & (np.cross(W, self.b) @ self.pole >= -1e-12)
        dA = _dist_rows(P, self.a)
        dB = _dist_rows(P, self.b)
        D = np.where(within, np.arcsin(np.clip(np.abs(h), 0.0, 1.0)),
                     np.minimum(dA, dB))
        X = np.where(within[:, None], W,
                     np.where((dA <= dB)[:, None], self.a[None, :], self.b[None, :]))
        return X, D

    def subsegment(self, t0: float, t1: float) -> "GeodesicSegment":
        return GeodesicSegment(self.point_at(t0), self.point_at(t1))


@dataclass(eq=False)
class ArcSegment:
    """Arc of the circle dist(x, center) = radius, from a to b.

    `positive` means traversal by positive rotation about the center axis
    (counterclockwise seen from outside at the center); this is the
    orientation every arc of a valid counterclockwise convex boundary has.
    """

    center: np.ndarray
    radius: float
    a: np.ndarray
    b: np.ndarray
    positive: bool = True

    def __post_init__(self):
        self.center = np.asarray(self.center, dtype=float)
        self.a = np.asarray(self.a, dtype=float)
        self.b = np.asarray(self.b, dtype=float)
        if not 0.0 < self.radius < math.pi / 2.0:
            raise InvalidBody(f"arc radius {self.radius} outside (0, pi/2)")
        for p in (self.a, self.b):
            if abs(dist(self.center, p) - self.radius) > CHAIN_EPS:
                raise InvalidBody("arc endpoint not on the circle")
        if self.sweep < 1e-12 or self.sweep > 2.0 * math.pi - 1e-12:
            raise InvalidBody("degenerate or full-circle arc; split it instead")

    @cached_property
    def _frame(self) -> tuple[np.ndarray, np.ndarray]:
        # e1 points at the start; (e1, e2, center) right-handed
        e1 = unit(self.a - dot(self.a, self.center) * self.center)
        e2 = unit(np.cross(self.center, e1))
        return e1, e2

    @cached_property
    def sweep(self) -> float:
        """Traversal angle about the center axis, in (0, 2*pi)."""
        e1, e2 = self._frame
        phi = math.atan2(dot(self.b, e2), dot(self.b, e1)) % (2.0 * math.pi)
        return phi if self.positive else (2.0 * math.pi - phi) % (2.0 * math.pi)

    @cached_property
    def length(self) -> float:
        return self.sweep * math.sin(self.radius)

    @property
    def start(self) -> np.ndarray:
        return self.a

    @property
    def end(self) -> np.ndarray:
        return self.b

    def _point_at_angle(self, phi: float) -> np.ndarray:
        e1, e2 = self._frame
        rim = math.cos(phi) * e1 + math.sin(phi) * e2
        return math.cos(self.radius) * self.center + math.sin(self.radius) * rim

    def point_at(self, t: float) -> np.ndarray:
        if t <= 0.0:
            return self.a
        if t >= 1.0:
            return self.b
        phi = t * self.sweep
        return self._point_at_angle(phi if self.positive else -phi)

    def tangent_at(self, p) -> np.ndarray:
        t = unit(np.cross(self.center, p))
        return t if self.positive else -t

    def support_pole_at(self, p) -> np.ndarray:
        """Pole of the tangent great circle at p, center side positive."""
        pole = unit(np.cross(p, self.tangent_at(p)))
        return pole

    def local_angle(self, p) -> float:
        """Traversal angle of p about the center, in [0, 2*pi)."""
        e1, e2 = self._frame
        phi = math.atan2(dot(p, e2), dot(p, e1)) % (2.0 * math.pi)
        return phi if self.positive else (2.0 * math.pi - phi) % (2.0 * math.pi)

    def local_param(self, p) -> float:
        phi = self.local_angle(p)
        if phi > self.sweep:
            # wraparound noise: a point at the start can read as angle ~2*pi
            phi = 0.0 if (2.0 * math.pi - phi) < (phi - self.sweep) else self.sweep
        return min(1.0, max(0.0, phi / self.sweep))

    def in_sector(self, p, slack: float = 1e-9) -> bool:
        phi = self.local_angle(p)
        return phi <= self.sweep + slack or phi >= 2.0 * math.pi - slack

    def closest_point(self, p) -> np.ndarray:
        w = np.asarray(p, dtype=float) - dot(p, self.center) * self.center
        wn = math.sqrt(float(w @ w))
        if wn < 1e-12:
            return np.array(self.a)
        cand = math.cos(self.radius) * self.center + math.sin(self.radius) * (w / wn)
        if self.in_sector(cand):
            return cand
        return np.array(self.a if dist(p, self.a) <= dist(p, self.b) else self.b)

    def distance_to(self, p) -> float:
        return dist(p, self.closest_point(p))

    def closest_points(self, P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized closest point and distance for rows of P."""
        cq = P @ self.center
        U = P - cq[:, None] * self.center
        un = np.linalg.norm(U, axis=1)
        safe = un > 1e-12
        U[safe] /= un[safe][:, None]
        cand = math.cos(self.radius) * self.center + math.sin(self.radius) * U
        e1, e2 = self._frame
        phi = np.arctan2(cand @ e2, cand @ e1) % (2.0 * math.pi)
        if not self.positive:
            phi = (2.0 * math.pi - phi) % (2.0 * math.pi)
        in_sector = safe & ((phi <= self.sweep + 1e-9) | (phi >= 2.0 * math.pi - 1e-9))
        d_ring = np.abs(np.arccos(np.clip(cq, -1.0, 1.0)) - self.radius)
        dA = _dist_rows(P, self.a)
        dB = _dist_rows(P, self.b)
        D = np.where(in_sector, d_ring, np.minimum(dA, dB))
        X = np.where(in_sector[:, None], cand,
                     np.where((dA <= dB)[:, None], self.a[None, :], self.b[None, :]))
        return X, D

    def subsegment(self, t0: float, t1: float) -> "ArcSegment":
        return ArcSegment(self.center, self.radius, self.point_at(t0),
                          self.point_at(t1), self.positive)


def _dist_rows(P: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Angular distances from rows of P to q, chord-accurate at both ends."""
    dots = P @ q
    d = P - q[None, :]
    near = 2.0 * np.arcsin(np.clip(0.5 * np.linalg.norm(d, axis=1), 0.0, 1.0))
    s = P + q[None, :]
    far = math.pi - 2.0 * np.arcsin(np.clip(0.5 * np.linalg.norm(s, axis=1), 0.0, 1.0))
    return np.where(dots >= 0.0, near, far)


def _support_poles_rows(seg, X: np.ndarray) -> np.ndarray:
    """Support pole at each boundary point in rows of X (all on seg)."""
    if isinstance(seg, GeodesicSegment):
        return np.broadcast_to(seg.pole, X.shape)
    sign = 1.0 if seg.positive else -1.0
    poles = sign * (seg.center[None, :] - math.cos(seg.radius) * X) / math.sin(seg.radius)
    return poles


Segment = Union[GeodesicSegment, ArcSegment]


class SupportPair(NamedTuple):
    right: np.ndarray
    left: np.ndarray


class _SegmentArrays:
    """Stacked per-kind arrays for vectorized whole-boundary queries."""

    def __init__(self, segments):
        geo = [(i, s) for i, s in enumerate(segments) if isinstance(s, GeodesicSegment)]
        arc = [(i, s) for i, s in enumerate(segments) if isinstance(s, ArcSegment)]
        self.geo_idx = np.array([i for i, _ in geo], dtype=int)
        self.arc_idx = np.array([i for i, _ in arc], dtype=int)
        if geo:
            self.gA = np.array([s.a for _, s in geo])
            self.gB = np.array([s.b for _, s in geo])
            self.gN = np.array([s.pole for _, s in geo])
        if arc:
            self.aC = np.array([s.center for _, s in arc])
            self.aR = np.array([s.radius for _, s in arc])
            self.aCos = np.cos(self.aR)
            self.aSin = np.sin(self.aR)
            self.aA = np.array([s.a for _, s in arc])
            self.aB = np.array([s.b for _, s in arc])
            e1 = np.array([s._frame[0] for _, s in arc])
            e2 = np.array([s._frame[1] for _, s in arc])
            sign = np.array([1.0 if s.positive else -1.0 for _, s in arc])
            # fold the traversal sense into the frame: angles measured in
            # (aE1, aE2) grow along the traversal for every arc
            self.aE1 = e1
            self.aE2 = e2 * sign[:, None]
            self.aSweep = np.array([s.sweep for _, s in arc])


@dataclass(eq=False)
class ConvexBody:
    """Closed counterclockwise segment chain bounding a convex region.

    Construction validates chain closure and the open-hemisphere
    condition; convexity itself is checked by :func:`is_convex` so that
    malformed inputs can still be loaded and reported on.
    """

    segments: tuple
    thickness_hint: Optional[float] = None

    def __post_init__(self):
        self.segments = tuple(self.segments)
        if len(self.segments) < 2:
            raise InvalidBody("boundary needs at least two segments")
        n = len(self.segments)
        for i, seg in enumerate(self.segments):
            nxt = self.segments[(i + 1) % n]
            if dist(seg.end, nxt.start) > CHAIN_EPS:
                raise InvalidBody(f"chain break between segments {i} and {(i + 1) % n}")
        pole = unit(np.sum(self.sample_boundary(max(64, 8 * n)), axis=0))
        if float(np.min(self.sample_boundary(max(64, 8 * n)) @ pole)) <= 0.0:
            raise InvalidBody("boundary not contained in an open hemisphere")

    @cached_property
    def lengths(self) -> np.ndarray:
        return np.array([s.length for s in self.segments])

    @cached_property
    def cum_lengths(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.lengths)])

    @property
    def total_length(self) -> float:
        return float(self.cum_lengths[-1])

    @cached_property
    def vertices(self) -> list[np.ndarray]:
        return [s.start for s in self.segments]

    @cached_property
    def interior_point(self) -> np.ndarray:
        return unit(np.sum(self.sample_boundary(256), axis=0))

    @cached_property
    def arrays(self) -> _SegmentArrays:
        return _SegmentArrays(self.segments)

    # -- parametrization ----------------------------------------------------

    def locate(self, s: float) -> tuple[int, float]:
        """Map normalized arclength s (mod 1) to (segment index, local t)."""
        s = s % 1.0
        target = s * self.total_length
        i = int(np.searchsorted(self.cum_lengths, target, side="right")) - 1
        i = min(max(i, 0), len(self.segments) - 1)
        seg_len = self.lengths[i]
        t = (target - self.cum_lengths[i]) / seg_len if seg_len > 0 else 0.0
        return i, min(max(t, 0.0), 1.0)

    def boundary_point(self, s: float) -> np.ndarray:
        i, t = self.locate(s)
        return self.segments[i].point_at(t)

    def param_of(self, i: int, t: float) -> float:
        return float((self.cum_lengths[i] + t * self.lengths[i]) / self.total_length)

    def sample_boundary(self, n: int) -> np.ndarray:
        """n boundary points, segment by segment, proportional to length."""
        pts = []
        lengths = [s.length for s in self.segments]
        total = sum(lengths)
        left = n
        for k, seg in enumerate(self.segments):
            m = max(1, int(round(n * lengths[k] / total)))
            if k == len(self.segments) - 1:
                m = max(1, left)
            left -= m
            for j in range(m):
                pts.append(seg.point_at(j / m))
        return np.array(pts)

    def boundary_param(self, p, tol: float = SUPPORT_EPS) -> float:
        """Normalized arclength of a point known to lie on the boundary."""
        i, t, d = self._closest_segment(p)
        if d > tol:
            raise NotOnBoundary(f"point at distance {d} from boundary")
        return self.param_of(i, t) % 1.0

    def _closest_segment(self, p) -> tuple[int, float, float]:
        P = np.asarray(p, dtype=float)[None, :]
        best = (0, 0.0, math.inf)
        for i, seg in enumerate(self.segments):
            X, D = seg.closest_points(P)
            if D[0] < best[2]:
                best = (i, seg.local_param(X[0]), float(D[0]))
        return best

    # -- queries ------------------------------------------------------------

    def nearest_boundary(self, P: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per row of P: (distance to boundary, nearest point, segment index)."""
        P = np.asarray(P, dtype=float)
        best_d = np.full(len(P), np.inf)
        best_x = np.zeros_like(P)
        best_j = np.zeros(len(P), dtype=int)
        for j, seg in enumerate(self.segments):
            X, D = seg.closest_points(P)
            better = D < best_d
            best_d[better] = D[better]
            best_x[better] = X[better]
            best_j[better] = j
        return best_d, best_x, best_j

    def contains_batch(self, P: np.ndarray, tol: float = CHAIN_EPS) -> np.ndarray:
        """Membership via support heights at the nearest boundary point.

        A point of a convex body lies inside every supporting hemisphere;
        an outside point drops below the one at its boundary projection.
        At junction projections both adjacent poles are required, which
        covers the corner normal cone.  Exact for convex chains.
        """
        P = np.asarray(P, dtype=float)
        _, X, J = self.nearest_boundary(P)
        inside = np.ones(len(P), dtype=bool)
        n = len(self.segments)
        for j in np.unique(J):
            rows = np.flatnonzero(J == j)
            seg = self.segments[j]
            Xr = X[rows]
            poles = _support_poles_rows(seg, Xr)
            h = np.arcsin(np.clip(np.einsum("ij,ij->i", P[rows], poles), -1.0, 1.0))
            ok = h >= -tol
            at_start = _dist_rows(Xr, seg.start) <= SUPPORT_EPS
            if at_start.any():
                prev = self.segments[(j - 1) % n]
                pole = prev.support_pole_at(seg.start)
                h2 = np.arcsin(np.clip(P[rows[at_start]] @ pole, -1.0, 1.0))
                ok[at_start] &= h2 >= -tol
            at_end = _dist_rows(Xr, seg.end) <= SUPPORT_EPS
            if at_end.any():
                nxt = self.segments[(j + 1) % n]
                pole = nxt.support_pole_at(seg.end)
                h2 = np.arcsin(np.clip(P[rows[at_end]] @ pole, -1.0, 1.0))
                ok[at_end] &= h2 >= -tol
            inside[rows] = ok
        return inside

    def contains(self, p, tol: float = CHAIN_EPS) -> bool:
        """Closed-region membership; boundary points within tol count inside."""
        return bool(self.contains_batch(np.asarray(p, dtype=float)[None, :], tol)[0])

    def contains_by_crossing(self, p, tol: float = CHAIN_EPS) -> bool:
        """Independent membership route: compare the distance from an
        interior point against its ray's boundary crossing."""
        z = self.interior_point
        d_p = dist(z, p)
        if d_p <= tol:
            return True
        if d_p >= math.pi - 1e-12:
            return False
        t_dir = sphere.tangent_at(z, p)
        theta = self._crossing_angle(z, t_dir)
        return d_p <= theta + tol

    def _crossing_angle(self, z, t_dir) -> float:
        """Angle along the ray (z, t_dir) of the first boundary crossing."""
        m = unit(np.cross(z, t_dir))
        best = math.inf
        arr = self.arrays
        cands: list[np.ndarray] = []
        if len(arr.geo_idx):
            c = np.cross(m, arr.gN)
            nn = np.linalg.norm(c, axis=1)
            ok = nn > 1e-12
            c = c[ok] / nn[ok][:, None]
            rows = np.concatenate([c, -c])
            N2 = np.concatenate([arr.gN[ok], arr.gN[ok]])
            A2 = np.concatenate([arr.gA[ok], arr.gA[ok]])
            B2 = np.concatenate([arr.gB[ok], arr.gB[ok]])
            inside = (np.einsum("ij,ij->i", np.cross(A2, rows), N2) >= -1e-12) & (
                np.einsum("ij,ij->i", np.cross(rows, B2), N2) >= -1e-12)
            cands.extend(rows[inside])
        if len(arr.arc_idx):
            cm = arr.aC @ m
            a1 = arr.aC - cm[:, None] * m
            a1n = np.linalg.norm(a1, axis=1)
            ok = a1n > 1e-12
            denom = np.sqrt(np.maximum(1.0 - cm[ok] ** 2, 1e-30))
            cospsi = arr.aCos[ok] / denom
            sol = np.abs(cospsi) <= 1.0
            a1u = a1[ok][sol] / a1n[ok][sol][:, None]
            a2u = np.cross(m, a1u)
            cp = cospsi[sol][:, None]
            sp = np.sqrt(np.maximum(1.0 - cospsi[sol] ** 2, 0.0))[:, None]
            pts = np.concatenate([cp * a1u + sp * a2u, cp * a1u - sp * a2u])
            idx = np.concatenate([arr.arc_idx[ok][sol], arr.arc_idx[ok][sol]])
            for x, i in zip(pts, idx):
                if self.segments[i].in_sector(x, slack=1e-10):
                    cands.append(x)
        for x in cands:
            ang = math.atan2(dot(x, t_dir), dot(x, z)) % (2.0 * math.pi)
            if 1e-12 < ang < best:
                best = ang
        return best

    def supporting_poles_at(self, p, tol: float = SUPPORT_EPS) -> SupportPair:
        """Right and left supporting hemisphere poles at boundary point p."""
        i, t, d = self._closest_segment(p)
        if d > tol:
            raise NotOnBoundary(f"point at distance {d} from boundary")
        n = len(self.segments)
        end_eps = 1e-9 / max(self.lengths[i], 1e-9)
        if t <= end_eps and dist(p, self.segments[i].start) <= tol:
            incoming = self.segments[(i - 1) % n]
            return SupportPair(incoming.support_pole_at(p),
                               self.segments[i].support_pole_at(p))
        if t >= 1.0 - end_eps and dist(p, self.segments[i].end) <= tol:
            outgoing = self.segments[(i + 1) % n]
            return SupportPair(self.segments[i].support_pole_at(p),
                               outgoing.support_pole_at(p))
        pole = self.segments[i].support_pole_at(p)
        return SupportPair(pole, pole)

    def support_pair_at_param(self, s: float) -> SupportPair:
        """Supporting poles at boundary parameter s (no point search)."""
        i, t = self.locate(s)
        seg = self.segments[i]
        n = len(self.segments)
        end_eps = SUPPORT_EPS / max(seg.length, SUPPORT_EPS)
        if t <= end_eps:
            p = seg.start
            return SupportPair(self.segments[(i - 1) % n].support_pole_at(p),
                               seg.support_pole_at(p))
        if t >= 1.0 - end_eps:
            p = seg.end
            return SupportPair(seg.support_pole_at(p),
                               self.segments[(i + 1) % n].support_pole_at(p))
        pole = seg.support_pole_at(seg.point_at(t))
        return SupportPair(pole, pole)

    # -- editing ------------------------------------------------------------

    def extract(self, s0: float, s1: float) -> list[Segment]:
        """Boundary pieces from param s0 counterclockwise to s1."""
        s0m = s0 % 1.0
        s1m = s1 % 1.0
        i0, t0 = self.locate(s0m)
        i1, t1 = self.locate(s1m)
        t0 = self._snap(i0, t0)
        t1 = self._snap(i1, t1)
        if t0 >= 1.0:
            i0 = (i0 + 1) % len(self.segments)
            t0 = 0.0
        if t1 <= 0.0:
            i1 = (i1 - 1) % len(self.segments)
            t1 = 1.0
        out: list[Segment] = []
        if i0 == i1 and t0 < t1 and (s1m - s0m) % 1.0 <= self.lengths[i0] / self.total_length + 1e-9:
            return [self.segments[i0].subsegment(t0, t1)]
        if t0 < 1.0:
            out.append(self.segments[i0].subsegment(t0, 1.0))
        j = (i0 + 1) % len(self.segments)
        while j != i1:
            out.append(self.segments[j])
            j = (j + 1) % len(self.segments)
        if t1 > 0.0:
            out.append(self.segments[i1].subsegment(0.0, t1))
        return out

    def _snap(self, i: int, t: float) -> float:
        """Snap a local parameter to an exact endpoint when within chain EPS."""
        seg = self.segments[i]
        if t * seg.length <= CHAIN_EPS:
            return 0.0
        if (1.0 - t) * seg.length <= CHAIN_EPS:
            return 1.0
        return t


def is_convex(body: ConvexBody, n_support: int = 64,
              n_samples: int = 256) -> tuple[bool, Optional[str]]:
    """Convexity check for a counterclockwise boundary chain.

    A closed chain bounds a convex region when a supporting hemisphere
    exists at every boundary point; that reduces to (a) non-reflex turns
    at every junction, (b) arcs of radius below pi/2 curving toward the
    interior, and (c) a hemisphere-support spot check at sampled points.
    Returns (ok, first violation description).
    """
    n = len(body.segments)
    for i, seg in enumerate(body.segments):
        if isinstance(seg, ArcSegment) and not seg.positive:
            return False, f"segment {i}: arc traversed away from its center side"
    for i in range(n):
        seg = body.segments[i]
        nxt = body.segments[(i + 1) % n]
        v = seg.end
        t_in = seg.tangent_at(v)
        t_out = nxt.tangent_at(nxt.start)
        turn = math.atan2(dot(np.cross(t_in, t_out), v), sphere.clamped_dot(t_in, t_out))
        if turn < -SUPPORT_EPS:
            return False, f"junction {i}: reflex turn {turn:.3e}"
    samples = body.sample_boundary(n_samples)
    probes: list[tuple[str, np.ndarray]] = []
    for i, seg in enumerate(body.segments):
        mid = seg.point_at(0.5)
        probes.append((f"segment {i} midpoint", seg.support_pole_at(mid)))
    for k in range(n_support):
        pair = body.support_pair_at_param(k / n_support)
        probes.append((f"boundary s={k / n_support:.4f} (right)", pair.right))
        probes.append((f"boundary s={k / n_support:.4f} (left)", pair.left))
    for label, pole in probes:
        worst = float(np.min(samples @ pole))
        if worst < -SUPPORT_EPS:
            return False, f"{label}: body leaves the supporting hemisphere by {-worst:.3e}"
    return True, None


def spherical_hull(points) -> ConvexBody:
    """Convex hull polygon of points strictly inside a common open hemisphere.

    Gnomonic projection about the normalized centroid turns great circles
    into straight lines, so the planar hull of the projected points maps
    back to the spherical hull.
    """
    from scipy.spatial import ConvexHull, QhullError

    pts = [unit(p) for p in points]
    if len(pts) < 3:
        raise DegenerateInput("need at least three points")
    center = unit(np.sum(pts, axis=0))
    for p in pts:
        if dot(p, center) <= 1e-9:
            raise NoCommonHemisphere("points spread beyond an open hemisphere")
    planar = np.array([sphere.gnomonic_project(p, center) for p in pts])
    try:
        hull = ConvexHull(planar)
    except QhullError as e:
        raise DegenerateInput(f"degenerate point set: {e}") from None
    verts = [pts[i] for i in hull.vertices]  # counterclockwise in the plane
    segs = []
    for i in range(len(verts)):
        segs.append(GeodesicSegment(verts[i], verts[(i + 1) % len(verts)]))
    return ConvexBody(tuple(segs))
