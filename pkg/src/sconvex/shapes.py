"""Canonical input bodies and the boundary decomposition.

A reduced body's boundary splits into geodesic arms and pairs of
opposite constant-width curves whose points are joined by thickness
chords.  Constant-width bodies are the special case of a single pair,
split anywhere by a thickness chord.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import sphere, width as width_mod
from .body import ArcSegment, ConvexBody, GeodesicSegment
from .errors import (
    DecompositionFailed,
    DegenerateInput,
    EvenN,
    RadiusOutOfRange,
    WidthOutOfRange,
)
from .sphere import dist, dot, unit


@dataclass(eq=False)
class Arm:
    """Maximal geodesic boundary run that is not of constant width."""

    start: float
    end: float
    segments: tuple = ()


@dataclass(eq=False)
class CurvePair:
    """Opposite boundary curves joined by thickness chords.

    Ranges are normalized-arclength intervals traversed counterclockwise;
    `b_range` may be degenerate (a single point) when the opposite curve
    collapses to one boundary point.
    """

    a_range: tuple
    b_range: tuple
    a_start: np.ndarray = None
    a_end: np.ndarray = None
    b_start: np.ndarray = None
    b_end: np.ndarray = None


@dataclass(eq=False)
class Decomposition:
    pairs: tuple = ()
    arms: tuple = ()

    @property
    def trivial(self) -> bool:
        """True when the boundary holds no constant-width pair."""
        return len(self.pairs) == 0

    def tiling(self) -> list[tuple[float, float, str]]:
        """Covered ranges in counterclockwise order: (start, end, kind)."""
        items = []
        for p in self.pairs:
            items.append((p.a_range[0], p.a_range[1], "cw"))
            if p.b_range[1] != p.b_range[0]:
                items.append((p.b_range[0], p.b_range[1], "cw"))
        for a in self.arms:
            items.append((a.start, a.end, "arm"))
        return sorted(items, key=lambda it: it[0])


@dataclass(eq=False)
class Butterfly:
    """Two geodesic arms crossing at a common interior point."""

    arm_a: GeodesicSegment
    arm_b: GeodesicSegment
    center: np.ndarray


def butterfly_from_arms(arm_a: GeodesicSegment, arm_b: GeodesicSegment,
                        delta: float, tol: float = 1e-8) -> Butterfly:
    """Assemble a butterfly, validating the crossing and chord pairing.

    The arms must intersect and their endpoints must pair into chords of
    length delta (either endpoint matching accepted).
    """
    cross = np.cross(arm_a.pole, arm_b.pole)
    if float(cross @ cross) < 1e-24:
        raise DegenerateInput("arms lie on one great circle")
    c = unit(cross)
    if arm_a.distance_to(c) > 1e-9 or arm_b.distance_to(c) > 1e-9:
        c = -c
        if arm_a.distance_to(c) > 1e-9 or arm_b.distance_to(c) > 1e-9:
            raise DegenerateInput("arms do not cross")
    straight = abs(dist(arm_a.a, arm_b.a) - delta) <= tol and \
        abs(dist(arm_a.b, arm_b.b) - delta) <= tol
    crossed = abs(dist(arm_a.a, arm_b.b) - delta) <= tol and \
        abs(dist(arm_a.b, arm_b.a) - delta) <= tol
    if not (straight or crossed):
        raise DegenerateInput("arm endpoints do not pair into thickness chords")
    return Butterfly(arm_a, arm_b, c)


def cap(center, r: float) -> tuple[ConvexBody, Decomposition]:
    """Spherical cap: constant width 2r, boundary stored as two arcs."""
    if not 0.0 < r < math.pi / 4.0:
        raise RadiusOutOfRange(f"cap radius {r} outside (0, pi/4)")
    c = unit(center)
    e1, _ = sphere.tangent_basis(c)
    p0 = math.cos(r) * c + math.sin(r) * e1
    p1 = math.cos(r) * c - math.sin(r) * e1
    body = ConvexBody((ArcSegment(c, r, p0, p1, True),
                       ArcSegment(c, r, p1, p0, True)), thickness_hint=2.0 * r)
    pair = CurvePair(a_range=(0.0, 0.5), b_range=(0.5, 1.0),
                     a_start=p0, a_end=p1, b_start=p1, b_end=p0)
    return body, Decomposition(pairs=(pair,))


def _circumradius(n: int, w: float) -> float:
    """Circumradius of the regular n-gon whose (n-1)/2-offset vertex
    distance equals w, solved by bisection."""
    m = (n - 1) // 2
    cos_step = math.cos(2.0 * math.pi * m / n)

    def span(rho: float) -> float:
        c, s = math.cos(rho), math.sin(rho)
        return math.acos(min(1.0, max(-1.0, c * c + s * s * cos_step)))

    lo, hi = 1e-12, math.pi / 2.0 - 1e-12
    if span(hi) <= w:
        raise WidthOutOfRange(f"width {w} not reachable for n={n}")
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if span(mid) < w:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    return (lo + hi) / 2.0


def reuleaux(n: int, w: float) -> tuple[ConvexBody, Decomposition]:
    """Spherical Reuleaux odd-gon of width w.

    n vertices on a regular circumcircle, each boundary arc of radius w
    centered at the opposite vertex.  The arc centered at vertex 0 is
    split at its midpoint so the decomposition chord lands on a junction.
    """
    if n < 3 or n % 2 == 0:
        raise EvenN(f"need an odd vertex count >= 3, got {n}")
    if not 0.0 < w < math.pi / 2.0:
        raise WidthOutOfRange(f"width {w} outside (0, pi/2)")
    rho = _circumradius(n, w)
    verts = []
    for k in range(n):
        az = 2.0 * math.pi * k / n
        verts.append(np.array([math.sin(rho) * math.cos(az),
                               math.sin(rho) * math.sin(az),
                               math.cos(rho)]))
    north = np.array([0.0, 0.0, 1.0])
    m0 = math.cos(w) * verts[0] + math.sin(w) * sphere.tangent_at(verts[0], north)
    j_split = (n - 1) // 2  # the arc centered at vertex 0
    segs = []
    for j in range(n):
        cidx = (j + (n + 1) // 2) % n
        a, b = verts[j], verts[(j + 1) % n]
        if j == j_split:
            segs.append(ArcSegment(verts[cidx], w, a, m0, True))
            segs.append(ArcSegment(verts[cidx], w, m0, b, True))
        else:
            segs.append(ArcSegment(verts[cidx], w, a, b, True))
    body = ConvexBody(tuple(segs), thickness_hint=w)
    s_m = body.boundary_param(m0)
    pair = CurvePair(a_range=(0.0, s_m), b_range=(s_m, 1.0),
                     a_start=verts[0], a_end=m0, b_start=m0, b_end=verts[0])
    return body, Decomposition(pairs=(pair,))


def quarter_disk(r: float) -> ConvexBody:
    """Quarter disk: two geodesic radii at a right angle closed by an arc.

    Reduced but not of constant width; its thickness and decomposition
    have no closed form here and are traced numerically by the caller.
    """
    if not 0.0 < r < math.pi / 2.0:
        raise RadiusOutOfRange(f"quarter-disk radius {r} outside (0, pi/2)")
    q = np.array([0.0, 0.0, 1.0])
    a = np.array([math.sin(r), 0.0, math.cos(r)])
    b = np.array([0.0, math.sin(r), math.cos(r)])
    return ConvexBody((GeodesicSegment(q, a),
                       ArcSegment(q, r, a, b, True),
                       GeodesicSegment(b, q)))


def decompose(body: ConvexBody, width_tol: float = 1e-7,
              n_samples: int = 256) -> Decomposition:
    """Split the boundary into arms and opposite constant-width curves.

    A boundary point is constant-width-type when the width at its
    supporting pole equals the thickness within `width_tol`, arm-type
    otherwise.  Constant-width bodies yield a single pair split at the
    chord through boundary parameter 0.  The caller asserts reducedness;
    pairing failures on other inputs raise DecompositionFailed.
    """
    delta, _ = width_mod.thickness(body)
    cw, _ = width_mod.is_constant_width(body, width_tol, n_boundary=256)
    if cw:
        f0 = body.boundary_point(0.0)
        g0 = width_mod.opposite_point(body, f0, "right", delta=delta)
        s_g = body.boundary_param(g0)
        pair = CurvePair(a_range=(0.0, s_g), b_range=(s_g, 1.0),
                         a_start=f0, a_end=g0, b_start=g0, b_end=f0)
        return Decomposition(pairs=(pair,))

    def is_cw(s: float) -> bool:
        # constant-width-type: width at the sample's pole equals the
        # thickness AND the minimal lune touches at the sample itself
        # (i.e. the sample is a thickness chord endpoint).  The second
        # condition separates geodesic arms whose width happens to equal
        # the thickness (e.g. the quarter disk's radii).
        pole = body.support_pair_at_param(s).right
        try:
            w, far = width_mod.width_at(body, pole)
        except width_mod.WidthOutOfRegime:
            return False
        if w > delta + width_tol:
            return False
        touch = unit(far - dot(far, pole) * np.asarray(pole, float))
        return dist(touch, body.boundary_point(s)) <= 1e-6

    n_samples = max(n_samples, 4 * len(body.segments))
    flags = [is_cw(k / n_samples) for k in range(n_samples)]
    if not any(flags):
        arms = _arm_runs_from_flags(body, flags)
        return Decomposition(arms=tuple(arms))
    if all(flags):
        raise DecompositionFailed(
            "every sample is constant-width-type but the body is not of "
            "constant width; classification resolution insufficient")
    runs = _runs(flags)  # list of (start_idx, end_idx, flag), cyclic
    boundaries = []
    for lo, hi, flag in runs:
        s0 = _refine_edge(is_cw, (lo - 1) / n_samples, lo / n_samples, flag)
        boundaries.append((_snap_to_junction(body, s0), flag))
    features = []
    for k, (s0, flag) in enumerate(boundaries):
        s1 = boundaries[(k + 1) % len(boundaries)][0]
        length = (s1 - s0) % 1.0  # zero means an isolated sample, not a full wrap
        features.append([s0 % 1.0, s0 % 1.0 + length, flag])
    # constant-width slivers below the sampling step are corner touch
    # points, already represented as a partner's degenerate range
    step = 1.0 / n_samples
    for f in features:
        if f[2] and f[1] - f[0] < step:
            f[2] = False
    features = _merge_adjacent_arms(features)
    pairs = _pair_cw_runs(body, delta, [tuple(f) for f in features if f[2]])
    arms = []
    for s0, s1, flag in features:
        if not flag:
            i0 = body.locate(s0 + 1e-9)[0]
            i1 = body.locate(s1 - 1e-9)[0]
            idx = []
            j = i0
            while True:
                idx.append(j)
                if j == i1:
                    break
                j = (j + 1) % len(body.segments)
            arms.append(Arm(start=s0, end=s1 % 1.0, segments=tuple(idx)))
    return Decomposition(pairs=tuple(pairs), arms=tuple(arms))


def _snap_to_junction(body, s: float, tol: float = 1e-6) -> float:
    junctions = body.cum_lengths / body.total_length
    sm = s % 1.0
    for j in junctions:
        if abs(sm - j) <= tol or abs(sm - j + 1.0) <= tol or abs(sm - j - 1.0) <= tol:
            return float(j % 1.0)
    return sm


def _merge_adjacent_arms(features: list) -> list:
    if len(features) <= 1:
        return features
    merged: list = []
    for f in features:
        if merged and not f[2] and not merged[-1][2] \
                and abs(merged[-1][1] % 1.0 - f[0] % 1.0) < 1e-9:
            merged[-1][1] = merged[-1][1] + (f[1] - f[0])
        else:
            merged.append(list(f))
    if len(merged) > 1 and not merged[0][2] and not merged[-1][2] \
            and abs(merged[-1][1] % 1.0 - merged[0][0] % 1.0) < 1e-9:
        merged[0][0] = merged[-1][0] - 1.0
        merged.pop()
    return merged


def _runs(flags: list[bool]) -> list[tuple[int, int, bool]]:
    n = len(flags)
    start = 0
    while start < n and flags[start] == flags[start - 1]:
        start += 1
    if start == n:  # uniform
        return [(0, n - 1, flags[0])]
    runs = []
    i = start
    while True:
        j = i
        while flags[(j + 1) % n] == flags[i % n]:
            j += 1
        runs.append((i % n, j % n, flags[i % n]))
        i = j + 1
        if (i - start) >= n:
            break
    return runs


def _refine_edge(pred, s_out: float, s_in: float, flag: bool, iters: int = 20) -> float:
    """Bisect the transition between a sample outside a run and one inside."""
    lo, hi = s_out, s_in
    for _ in range(iters):
        mid = (lo + hi) / 2.0
        if pred(mid % 1.0) == flag:
            hi = mid
        else:
            lo = mid
    return hi


def _pair_cw_runs(body: ConvexBody, delta: float, cw_features) -> list[CurvePair]:
    def containing(s: float):
        for k, (s0, s1, _) in enumerate(cw_features):
            if s0 <= s % 1.0 <= s1 or s0 <= s % 1.0 + 1.0 <= s1:
                return k
        return None

    used = set()
    pairs = []
    for k, (s0, s1, _) in enumerate(cw_features):
        if k in used:
            continue
        mid = (s0 + s1) / 2.0
        f_mid = body.boundary_point(mid % 1.0)
        g_mid = width_mod.opposite_point(body, f_mid, "right", delta=delta)
        s_opp = body.boundary_param(g_mid)
        partner = containing(s_opp)
        if partner is None or partner in used:
            # opposite curve collapsed to (or lands at) a single point
            a0, a1 = s0 % 1.0, s1 % 1.0
            pairs.append(CurvePair(
                a_range=(a0, a1 if a1 > a0 else a1 + 1.0),
                b_range=(s_opp, s_opp),
                a_start=body.boundary_point(a0), a_end=body.boundary_point(a1),
                b_start=g_mid, b_end=g_mid))
            used.add(k)
            continue
        if partner == k:
            raise DecompositionFailed("constant-width run opposite to itself")
        p0, p1, _ = cw_features[partner]
        pairs.append(CurvePair(
            a_range=(s0 % 1.0, s1),
            b_range=(p0 % 1.0, p1),
            a_start=body.boundary_point(s0 % 1.0), a_end=body.boundary_point(s1 % 1.0),
            b_start=body.boundary_point(p0 % 1.0), b_end=body.boundary_point(p1 % 1.0)))
        used.add(k)
        used.add(partner)
    return pairs


def _arm_runs_from_flags(body: ConvexBody, flags: list[bool]) -> list[Arm]:
    return [Arm(start=0.0, end=1.0, segments=tuple(range(len(body.segments))))]
