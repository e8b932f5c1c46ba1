"""Spherical convex bodies: width machinery and arc approximation."""

from .body import ArcSegment, ConvexBody, GeodesicSegment, SupportPair, is_convex, spherical_hull
from .approx import (
    Certificate,
    Chord,
    ChordNet,
    approximate,
    build_chord_net,
    chord_spacing_bound,
    replacement_curves,
    sandwich_certificate,
    select_chords,
)
from .metrics import HausdorffResult, hausdorff, point_to_body
from .shapes import Arm, Butterfly, CurvePair, Decomposition, cap, decompose, quarter_disk, reuleaux
from .width import (
    Lune,
    LuneScan,
    ThicknessChord,
    is_constant_width,
    lune_midpoints,
    lune_thickness,
    opposite_point,
    opposite_point_at_param,
    supporting_pole_candidates,
    thickness,
    width_at,
    width_by_lune_scan,
)

__all__ = [
    "ArcSegment", "Certificate", "Chord", "ChordNet", "ConvexBody",
    "CurvePair", "Decomposition", "Arm", "Butterfly", "GeodesicSegment",
    "HausdorffResult", "Lune", "LuneScan", "SupportPair", "ThicknessChord",
    "opposite_point_at_param",
    "approximate", "build_chord_net", "cap", "chord_spacing_bound",
    "decompose", "hausdorff", "is_constant_width", "is_convex",
    "lune_midpoints", "lune_thickness", "opposite_point", "point_to_body",
    "quarter_disk", "replacement_curves", "reuleaux", "sandwich_certificate",
    "select_chords", "spherical_hull", "supporting_pole_candidates",
    "thickness", "width_at", "width_by_lune_scan",
]

__version__ = "0.1.0"
