"""Constructive approximation by circular arcs of radius equal to the
body thickness.

For each pair of opposite constant-width boundary curves, a net of
thickness chords is selected with adjacent endpoint spacing at most eps
and successive chord angle below pi/2.  Between consecutive chords the
curves are replaced by arcs of radius equal to the thickness, centered
at apex points equidistant from consecutive chord feet.  The output has
the same thickness, and a corner-point certificate bounds the Hausdorff
distance to the input by eps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import metrics, sphere, width as width_mod
from .body import CHAIN_EPS, ArcSegment, ConvexBody, is_convex
from .errors import (
    CertificateFailed,
    ConvexityLost,
    EpsOutOfRange,
    RefinementDiverged,
    ScaffoldFailed,
)
from .sphere import dist, dot, unit

# keep successive chord angles this far below pi/2 so the corner-angle
# inequality survives roundoff
ANGLE_MARGIN = 1e-3
MAX_INSERTS = 10_000


def chord_spacing_bound(eps: float) -> float:
    """Chord spacing 2*arctan(sin(eps)) whose corner bound equals eps.

    Satisfies arcsin(tan(result/2)) = eps; spacing at or below eps is
    therefore always sufficient, since eps never exceeds this value on
    (0, pi/2].
    """
    if not 0.0 < eps <= math.pi / 2.0:
        raise EpsOutOfRange(f"eps {eps} outside (0, pi/2]")
    return 2.0 * math.atan(math.sin(eps))


@dataclass(eq=False)
class Chord:
    """Thickness chord with its relative positions along the two curves."""

    t: float  # position in the pair's first range
    u: float  # position in the pair's opposite range
    f: np.ndarray
    g: np.ndarray


@dataclass(eq=False)
class ChordNet:
    """Scaffold for one curve pair: chords, crossings, apexes, arcs."""

    delta: float
    chords: list
    crossings: list = field(default_factory=list)   # o_i, i = 1..n-1
    angles_f: list = field(default_factory=list)    # ray angle at o_i toward f's
    angles_g: list = field(default_factory=list)    # ray angle at o_i toward g's
    apexes: list = field(default_factory=list)      # c_0 .. c_n
    a_arcs: list = field(default_factory=list)      # replacement over the f-curve
    b_arcs: list = field(default_factory=list)      # replacement over the g-curve
    a_corners: Optional[list] = None                # k_i, set by the certificate
    b_corners: Optional[list] = None                # l_i

    @property
    def n(self) -> int:
        return len(self.chords)


def _chord_crossing(c1: Chord, c2: Chord, interior) -> Optional[np.ndarray]:
    """Crossing point of two chords; a shared endpoint counts as the
    crossing.  None when the chords lie on one great circle without a
    shared endpoint."""
    for p, q in ((c1.f, c2.f), (c1.g, c2.g), (c1.f, c2.g), (c1.g, c2.f)):
        if dist(p, q) <= CHAIN_EPS:
            return np.asarray(p, float)
    n1 = sphere.great_circle_pole(c1.f, c1.g)
    n2 = sphere.great_circle_pole(c2.f, c2.g)
    cr = np.cross(n1, n2)
    if float(cr @ cr) < 1e-24:
        return None
    o = unit(cr)
    return o if dot(o, interior) >= dot(-o, interior) else -o


def _travel_dir(chord: Chord, o) -> np.ndarray:
    """Tangent of the chord's great circle at o, in the f -> g direction."""
    if dist(o, chord.f) <= CHAIN_EPS:
        return sphere.tangent_at(chord.f, chord.g)
    if dist(o, chord.g) <= CHAIN_EPS:
        return -sphere.tangent_at(chord.g, chord.f)
    n = sphere.great_circle_pole(chord.f, chord.g)
    return unit(np.cross(n, o))


def oriented_chord_angle(c1: Chord, c2: Chord, interior) -> float:
    """Positively oriented angle from chord c1 to chord c2 at their
    crossing, in [0, 2*pi).  Coincident opposite chords give pi."""
    o = _chord_crossing(c1, c2, interior)
    if o is None:
        return math.pi
    u1 = _travel_dir(c1, o)
    u2 = _travel_dir(c2, o)
    ang = math.atan2(dot(np.cross(u1, u2), o), sphere.clamped_dot(u1, u2))
    ang %= 2.0 * math.pi
    if ang > 2.0 * math.pi - 1e-6:  # clockwise noise on near-parallel chords
        ang = 0.0
    return ang


def select_chords(body: ConvexBody, pair, eps: float,
                  delta: Optional[float] = None) -> list[Chord]:
    """Thickness chords along a curve pair with spacing and angle control.

    Starts from the pair's endpoint chords and repeatedly bisects any
    adjacent pair violating the constraints: an f-side gap above eps
    splits the first curve's interval, a g-side gap the opposite one
    (which is what builds the chord fans through a boundary vertex), and
    an angle violation splits the wider side.  Coincident consecutive
    endpoints are expected and kept.
    """
    if not 0.0 < eps < math.pi / 2.0:
        raise EpsOutOfRange(f"eps {eps} outside (0, pi/2)")
    if delta is None:
        delta = width_mod.thickness(body)[0]
    a0, a1 = pair.a_range
    b0, b1 = pair.b_range
    a_len = (a1 - a0) % 1.0 or (1.0 if a1 != a0 else 0.0)
    b_len = (b1 - b0) % 1.0 or (1.0 if b1 != b0 else 0.0)
    interior = body.interior_point

    def f_at(t: float) -> np.ndarray:
        if t <= 0.0:
            return np.asarray(pair.a_start, float)
        if t >= 1.0:
            return np.asarray(pair.a_end, float)
        return body.boundary_point((a0 + t * a_len) % 1.0)

    def g_at(u: float) -> np.ndarray:
        if u <= 0.0 or b_len == 0.0:
            return np.asarray(pair.b_start, float)
        if u >= 1.0:
            return np.asarray(pair.b_end, float)
        return body.boundary_point((b0 + u * b_len) % 1.0)

    def u_of_point(g: np.ndarray, lo: float, hi: float) -> float:
        if b_len == 0.0:
            return 0.0
        rel = ((body.boundary_param(g) - b0) % 1.0) / b_len
        if rel > 1.0 + 1e-6 / b_len:
            rel = 0.0 if (rel - 1.0) > (1.0 - rel) % 1.0 else 1.0
        return min(max(rel, lo), hi)

    def t_of_point(f: np.ndarray, lo: float, hi: float) -> float:
        rel = ((body.boundary_param(f) - a0) % 1.0) / a_len
        if rel > 1.0 + 1e-6 / a_len:
            rel = 0.0 if (rel - 1.0) > (1.0 - rel) % 1.0 else 1.0
        return min(max(rel, lo), hi)

    chords = [Chord(0.0, 0.0, f_at(0.0), g_at(0.0)),
              Chord(1.0, 1.0, f_at(1.0), g_at(1.0))]
    inserts = 0
    i = 0
    while i < len(chords) - 1:
        c1, c2 = chords[i], chords[i + 1]
        df = dist(c1.f, c2.f)
        dg = dist(c1.g, c2.g)
        split_f = df > eps
        split_g = not split_f and dg > eps
        if not split_f and not split_g:
            if oriented_chord_angle(c1, c2, interior) < math.pi / 2.0 - ANGLE_MARGIN:
                i += 1
                continue
            if df >= dg:
                split_f = True
            else:
                split_g = True
        if inserts >= MAX_INSERTS:
            raise RefinementDiverged(f"chord refinement exceeded {MAX_INSERTS} insertions")
        if split_f:
            t_new = (c1.t + c2.t) / 2.0
            f_new = f_at(t_new)
            g_new = width_mod.opposite_point_at_param(
                body, (a0 + t_new * a_len) % 1.0, "right", delta=delta)
            u_new = u_of_point(g_new, c1.u, c2.u)
        else:
            u_new = (c1.u + c2.u) / 2.0
            g_new = g_at(u_new)
            f_new = width_mod.opposite_point_at_param(
                body, (b0 + u_new * b_len) % 1.0, "right", delta=delta)
            t_new = t_of_point(f_new, c1.t, c2.t)
        chords.insert(i + 1, Chord(t_new, u_new, f_new, g_new))
        inserts += 1
        i = max(i - 1, 0)
    return chords


def build_chord_net(body: ConvexBody, chords: list[Chord], delta: float) -> ChordNet:
    """Crossings, ray angles and apex points for a selected chord list.

    Each apex c_i is a point at distance delta from both f_i and f_{i+1},
    on the opposite-curve side of the great circle through them; the
    boundary apexes c_0 and c_n are the pair's opposite-curve endpoints.
    """
    interior = body.interior_point
    net = ChordNet(delta=delta, chords=chords)
    n = len(chords)
    for i in range(n - 1):
        c1, c2 = chords[i], chords[i + 1]
        o = _chord_crossing(c1, c2, interior)
        if o is None:
            raise ScaffoldFailed("successive chords on one great circle without shared point")
        net.crossings.append(o)
        net.angles_f.append(_ray_angle(o, c1.f, c2.f))
        net.angles_g.append(_ray_angle(o, c1.g, c2.g))
    net.apexes.append(np.asarray(chords[0].g, float))
    for i in range(n - 1):
        net.apexes.append(_apex(chords[i], chords[i + 1], delta, interior))
    net.apexes.append(np.asarray(chords[-1].g, float))
    return net


def _ray_angle(o, p, q) -> float:
    if dist(p, q) <= CHAIN_EPS or dist(o, p) <= CHAIN_EPS or dist(o, q) <= CHAIN_EPS:
        return 0.0
    return sphere.angle_at(o, p, q)


def _apex(c1: Chord, c2: Chord, delta: float, interior) -> np.ndarray:
    if dist(c1.g, c2.g) <= CHAIN_EPS:
        return np.asarray(c1.g, float)
    if dist(c1.f, c2.f) <= CHAIN_EPS:
        # chord fan through a vertex: walk delta along the bisector
        t1 = sphere.tangent_at(c1.f, c1.g)
        t2 = sphere.tangent_at(c2.f, c2.g)
        bis = unit(t1 + t2)
        return math.cos(delta) * np.asarray(c1.f, float) + math.sin(delta) * bis
    pts = sphere.circle_circle_intersection(c1.f, delta, c2.f, delta)
    if not pts:
        raise ScaffoldFailed(
            f"radius-{delta} circles at consecutive chord feet do not meet")
    n_ff = sphere.great_circle_pole(c1.f, c2.f)
    g_side = math.copysign(1.0, dot(unit(np.asarray(c1.g) + np.asarray(c2.g)), n_ff))
    for p in pts:
        if math.copysign(1.0, dot(p, n_ff)) == g_side:
            return p
    return max(pts, key=lambda p: dot(p, interior))


def replacement_curves(net: ChordNet) -> tuple[list, list]:
    """Arc chains replacing the two curves of the pair.

    The f-side chain joins consecutive chord feet by arcs centered at the
    apexes; the g-side chain joins consecutive apexes by arcs centered at
    the chord feet.  Entries are None where coincident points make the
    arc empty; every real arc has radius exactly net.delta.
    """
    n = net.n
    a_arcs: list = []
    for i in range(n - 1):
        f1, f2 = net.chords[i].f, net.chords[i + 1].f
        if dist(f1, f2) <= CHAIN_EPS:
            a_arcs.append(None)
            continue
        arc = ArcSegment(net.apexes[i + 1], net.delta, f1, f2, True)
        if arc.sweep >= math.pi:
            raise ScaffoldFailed("replacement arc sweeps past a semicircle")
        a_arcs.append(arc)
    b_arcs: list = []
    for i in range(n):
        c_prev, c_next = net.apexes[i], net.apexes[i + 1]
        if dist(c_prev, c_next) <= CHAIN_EPS:
            b_arcs.append(None)
            continue
        arc = ArcSegment(net.chords[i].f, net.delta, c_prev, c_next, True)
        if arc.sweep >= math.pi:
            raise ScaffoldFailed("replacement arc sweeps past a semicircle")
        b_arcs.append(arc)
    net.a_arcs = a_arcs
    net.b_arcs = b_arcs
    return a_arcs, b_arcs


def _features_in_order(dec) -> list[tuple[float, float, str, int]]:
    feats = []
    for p_idx, pair in enumerate(dec.pairs):
        a0, a1 = pair.a_range
        feats.append((a0 % 1.0, a1 if a1 > a0 else a1 + 1.0, "a", p_idx))
        b0, b1 = pair.b_range
        if (b1 - b0) % 1.0 > 1e-12 or b1 - b0 >= 1.0 - 1e-12:
            feats.append((b0 % 1.0, b1 if b1 > b0 else b1 + 1.0, "b", p_idx))
    for arm in dec.arms:
        a0, a1 = arm.start, arm.end
        feats.append((a0 % 1.0, a1 if a1 > a0 else a1 + 1.0, "arm", -1))
    return sorted(feats, key=lambda f: f[0])


def _assemble(body: ConvexBody, dec, nets: list[ChordNet],
              replaced: set[int]) -> ConvexBody:
    """Body with the pairs in `replaced` swapped for their arc chains and
    everything else copied from the original boundary."""
    feats = _features_in_order(dec)
    segs: list = []
    cursor = feats[0][0]
    for s0, s1, kind, p_idx in feats:
        if s0 > cursor + 1e-9:  # uncovered gap: copy it verbatim
            segs.extend(body.extract(cursor, s0))
        if kind in ("a", "b") and p_idx in replaced:
            arcs = nets[p_idx].a_arcs if kind == "a" else nets[p_idx].b_arcs
            segs.extend(a for a in arcs if a is not None)
        else:
            segs.extend(body.extract(s0, s1))
        cursor = max(cursor, s1)
    end = feats[0][0] + 1.0
    if end > cursor + 1e-9:
        segs.extend(body.extract(cursor, end))
    return ConvexBody(tuple(segs), thickness_hint=body.thickness_hint)


def approximate(body: ConvexBody, dec, eps: float,
                with_certificate: bool = True):
    """Replace every opposite curve pair by radius-delta arc chains.

    Pairs are processed one at a time with a convexity re-validation
    after each splice.  Arms are copied verbatim; a decomposition with no
    pair returns the input unchanged.  Returns (approximant, nets,
    report dict).
    """
    if not 0.0 < eps < math.pi / 2.0:
        raise EpsOutOfRange(f"eps {eps} outside (0, pi/2)")
    delta_in, _ = width_mod.thickness(body)
    delta = delta_in
    if body.thickness_hint is not None and abs(body.thickness_hint - delta_in) <= 1e-6:
        delta = float(body.thickness_hint)
    report = {
        "delta_in": delta_in,
        "delta_out": delta_in,
        "constant_width_dev": None,
        "certified_bound": 0.0,
        "measured_hausdorff": 0.0,
        "n_chords": [],
        "trivial": bool(dec.trivial),
    }
    if dec.trivial:
        return body, [], report

    nets: list[ChordNet] = []
    for pair in dec.pairs:
        chords = select_chords(body, pair, eps, delta=delta)
        net = build_chord_net(body, chords, delta)
        replacement_curves(net)
        nets.append(net)
        report["n_chords"].append(len(chords))

    result = body
    for j in range(len(nets)):
        result = _assemble(body, dec, nets, set(range(j + 1)))
        ok, why = is_convex(result)
        if not ok:
            raise ConvexityLost(f"splice of pair {j} broke convexity: {why}")

    report["delta_out"] = width_mod.thickness(result)[0]
    whole_boundary = len(dec.pairs) == 1 and not dec.arms
    if whole_boundary:
        _, dev = width_mod.is_constant_width(result, 1e-6)
        report["constant_width_dev"] = dev
    if with_certificate:
        cert = sandwich_certificate(body, result, nets, eps)
        report["certified_bound"] = cert.bound
        report["measured_hausdorff"] = metrics.hausdorff(body, result).value
    return result, nets, report


@dataclass(eq=False)
class Certificate:
    """Corner-point Hausdorff bound with its per-chord internals."""

    bound: float
    corner_angles: list      # (net, i, angle at k_i between f_i and f_{i+1})
    corner_distances: list   # (net, i, dist(k_i, chord), chord length)
    hull: ConvexBody


def sandwich_certificate(body: ConvexBody, approx_body: ConvexBody,
                         nets: list[ChordNet], eps: float,
                         n_membership: int = 256) -> Certificate:
    """Verify the sandwich hull subset body subset hull-plus-triangles.

    Corner k_i is the crossing of the chord-orthogonal supporting circles
    at f_i and f_{i+1} (the chord midpoint when those coincide); all
    corner distances to their chords bound the Hausdorff distance between
    input and output.  Raises CertificateFailed when the bound exceeds
    eps or a membership sample fails.
    """
    from .body import spherical_hull

    interior = body.interior_point
    bound = 0.0
    corner_angles = []
    corner_distances = []
    hull_points: list[np.ndarray] = []
    triangles: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []

    for net_idx, net in enumerate(nets):
        ch = net.chords
        k_poles = [sphere.tangent_at(c.f, c.g) for c in ch]
        l_poles = [sphere.tangent_at(c.g, c.f) for c in ch]
        hull_points.extend(c.f for c in ch)
        hull_points.extend(c.g for c in ch)
        a_corners = []
        b_corners = []
        for i in range(net.n - 1):
            k_i = _corner(ch[i].f, ch[i + 1].f, k_poles[i], k_poles[i + 1], interior)
            l_i = _corner(ch[i].g, ch[i + 1].g, l_poles[i], l_poles[i + 1], interior)
            a_corners.append(k_i)
            b_corners.append(l_i)
            for p, q, corner in ((ch[i].f, ch[i + 1].f, k_i), (ch[i].g, ch[i + 1].g, l_i)):
                gap = dist(p, q)
                if gap <= CHAIN_EPS:
                    continue
                d = sphere.dist_point_to_geodesic_arc(corner, p, q)
                bound = max(bound, d)
                corner_distances.append((net_idx, i, d, gap))
                if dist(corner, p) > CHAIN_EPS and dist(corner, q) > CHAIN_EPS:
                    corner_angles.append((net_idx, i, sphere.angle_at(corner, p, q)))
                    triangles.append((np.asarray(p, float), np.asarray(corner, float),
                                      np.asarray(q, float)))
        net.a_corners = a_corners
        net.b_corners = b_corners

    hull = spherical_hull(hull_points) if len(hull_points) >= 3 else None
    if bound > eps + 1e-12:
        raise CertificateFailed(f"corner bound {bound} exceeds eps {eps}")

    if hull is not None:
        params = np.linspace(0.0, 1.0, n_membership, endpoint=False)
        hull_samples = np.array([hull.boundary_point(float(s)) for s in params])
        if not body.contains_batch(hull_samples, tol=1e-9).all():
            raise CertificateFailed("hull sample escapes the input body")
        if not approx_body.contains_batch(hull_samples, tol=1e-9).all():
            raise CertificateFailed("hull sample escapes the approximant")
        for target in (body, approx_body):
            P = np.array([target.boundary_point(float(s)) for s in params])
            in_q = hull.contains_batch(P, tol=1e-9)
            if not in_q.all():
                in_q |= _in_triangles_batch(P, triangles)
            if not in_q.all():
                raise CertificateFailed("boundary sample escapes the outer region")
    return Certificate(bound=bound, corner_angles=corner_angles,
                       corner_distances=corner_distances, hull=hull)


def _corner(p, q, pole_p, pole_q, interior) -> np.ndarray:
    """Crossing of the two supporting circles beyond the arc pq."""
    if dist(p, q) <= CHAIN_EPS:
        return np.asarray(p, float)
    cr = np.cross(pole_p, pole_q)
    if float(cr @ cr) < 1e-24:
        return sphere.arc_point(p, q, 0.5)
    x = unit(cr)
    return x if dot(x, interior) >= dot(-x, interior) else -x


def _in_triangle(p, a, b, c, tol: float = 1e-9) -> bool:
    n_ab = np.cross(a, b)
    n_bc = np.cross(b, c)
    n_ca = np.cross(c, a)
    orient = dot(n_ab, c)
    if abs(orient) < 1e-18:  # sliver: fall back to distance from the chord
        return sphere.dist_point_to_geodesic_arc(p, a, c) <= tol
    s = math.copysign(1.0, orient)
    for n_side in (n_ab, n_bc, n_ca):
        nn = math.sqrt(float(n_side @ n_side))
        if nn < 1e-15:
            continue
        if s * dot(n_side, p) / nn < -tol:
            return False
    return True


def _in_triangles_batch(P: np.ndarray, triangles, tol: float = 1e-9) -> np.ndarray:
    """Row mask: point lies in at least one of the spherical triangles."""
    hit = np.zeros(len(P), dtype=bool)
    for a, b, c in triangles:
        n_ab = np.cross(a, b)
        n_bc = np.cross(b, c)
        n_ca = np.cross(c, a)
        orient = dot(n_ab, c)
        if abs(orient) < 1e-18:
            continue
        s = math.copysign(1.0, orient)
        ok = np.ones(len(P), dtype=bool)
        for n_side in (n_ab, n_bc, n_ca):
            nn = math.sqrt(float(n_side @ n_side))
            if nn < 1e-15:
                continue
            ok &= s * (P @ n_side) / nn >= -tol
        hit |= ok
    return hit
