"""Static SVG rendering of bodies and construction overlays."""

from __future__ import annotations

import math

import numpy as np

from . import sphere
from .body import ConvexBody
from .errors import OutsideHemisphere
from .sphere import dot, unit

_COLORS = ["#1b6ca8", "#c1453a", "#3a8c4f", "#8a5fb0", "#b8860b", "#3f7f7f"]


def _project(p, view, basis, projection: str) -> tuple[float, float]:
    h = dot(p, view)
    if h <= 1e-9:
        raise OutsideHemisphere("body not within the visible hemisphere")
    e1, e2 = basis
    if projection == "orthographic":
        return dot(p, e1), dot(p, e2)
    if projection == "stereographic":
        return dot(p, e1) / (1.0 + h), dot(p, e2) / (1.0 + h)
    raise ValueError(f"unknown projection {projection!r}")


def _polyline(seg, view, basis, projection, arc_samples):
    pts = [seg.point_at(j / arc_samples) for j in range(arc_samples)]
    pts.append(seg.point_at(1.0))
    return [_project(p, view, basis, projection) for p in pts]


def render_svg(bodies, projection: str = "orthographic", view=(0.0, 0.0, 1.0),
               arc_samples: int = 64, overlays=None, size: int = 640) -> str:
    """Render boundaries as dense polylines; returns SVG 1.1 text.

    `overlays` is an optional list of nets as point dicts (keys among
    "chords", "o", "c", "k", "l") as found in a report file.
    """
    v = unit(view)
    basis = sphere.tangent_basis(v)
    paths = []
    for body in bodies:
        path = []
        for seg in body.segments:
            path.extend(_polyline(seg, v, basis, projection, arc_samples))
        paths.append(path)
    chords = []
    markers = []
    for net in overlays or []:
        for f, g in net.get("chords", []):
            line = [sphere.arc_point(np.array(f), np.array(g), t / 16) for t in range(17)]
            chords.append([_project(p, v, basis, projection) for p in line])
        for key, shade in (("o", "#444444"), ("c", "#c1453a"),
                           ("k", "#3a8c4f"), ("l", "#8a5fb0")):
            for p in net.get(key, []):
                markers.append((_project(np.array(p), v, basis, projection), shade))

    all_xy = [xy for path in paths for xy in path]
    all_xy += [xy for line in chords for xy in line]
    all_xy += [xy for xy, _ in markers]
    xs = [xy[0] for xy in all_xy]
    ys = [xy[1] for xy in all_xy]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-6)
    pad = 0.06 * span
    x0, y0 = min(xs) - pad, min(ys) - pad
    scale = size / (span + 2 * pad)

    def to_px(xy) -> str:
        # flip y: SVG grows downward
        return f"{(xy[0] - x0) * scale:.6f},{(size - (xy[1] - y0) * scale):.6f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    for i, path in enumerate(paths):
        pts = " ".join(to_px(xy) for xy in path)
        color = _COLORS[i % len(_COLORS)]
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5"/>')
    for line in chords:
        pts = " ".join(to_px(xy) for xy in line)
        out.append(f'<polyline points="{pts}" fill="none" stroke="#999999" '
                   f'stroke-width="0.7" stroke-dasharray="4,3"/>')
    for xy, shade in markers:
        x, y = to_px(xy).split(",")
        out.append(f'<circle cx="{x}" cy="{y}" r="2.5" fill="{shade}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
