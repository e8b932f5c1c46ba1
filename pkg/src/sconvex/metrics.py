"""Hausdorff distance between spherical convex bodies.

Sampling-based estimate with one round of local refinement; for convex
bodies the directed supremum of distance-to-the-other-set is attained on
the boundary, so boundary sampling suffices.  The value is a lower-bound
style estimate: the constructive certificate, not this module, carries
the authoritative upper bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .body import ConvexBody
from .sphere import dist


@dataclass(eq=False)
class HausdorffResult:
    value: float
    directed_ab: float
    directed_ba: float
    resolution: int


def point_to_body(p, body: ConvexBody) -> float:
    """Distance from p to the closed region bounded by the body."""
    return float(points_to_body(np.asarray(p, dtype=float)[None, :], body)[0])


def points_to_body(P: np.ndarray, body: ConvexBody) -> np.ndarray:
    """Distance from each row of P to the closed region (zero inside)."""
    d, _, _ = body.nearest_boundary(P)
    d[body.contains_batch(P)] = 0.0
    return d


def _directed(a: ConvexBody, b: ConvexBody, samples: int) -> float:
    params = np.linspace(0.0, 1.0, samples, endpoint=False)
    P = np.array([a.boundary_point(float(s)) for s in params])
    dists = points_to_body(P, b)
    k = int(np.argmax(dists))
    best = float(dists[k])
    # one refinement pass around the argmax
    lo = (k - 1) / samples
    hi = (k + 1) / samples
    refined = np.array([a.boundary_point(float(s) % 1.0)
                        for s in np.linspace(lo, hi, 17)])
    return max(best, float(np.max(points_to_body(refined, b))))


def hausdorff(a: ConvexBody, b: ConvexBody, samples: int = 2048) -> HausdorffResult:
    """Symmetric Hausdorff distance estimate from boundary samples."""
    samples = max(samples, 64)
    d_ab = _directed(a, b, samples)
    d_ba = _directed(b, a, samples)
    return HausdorffResult(value=max(d_ab, d_ba), directed_ab=d_ab,
                           directed_ba=d_ba, resolution=samples)
