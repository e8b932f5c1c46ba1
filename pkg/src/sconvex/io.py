"""Body files: canonical JSON with the "sconvex-1" format tag.

Serialization is canonical (sorted keys, repr-exact floats, trailing
newline) so that save/load round trips are byte identical and repeated
pipeline runs produce identical files.
"""

from __future__ import annotations

import json
from typing import Optional

import numpy as np

from .body import ArcSegment, ConvexBody, GeodesicSegment
from .errors import InvalidBody
from .shapes import Arm, CurvePair, Decomposition

FORMAT_TAG = "sconvex-1"


def _point(p) -> list[float]:
    return [float(x) for x in p]


def body_to_dict(body: ConvexBody, dec: Optional[Decomposition] = None,
                 metadata: Optional[dict] = None) -> dict:
    segs = []
    for seg in body.segments:
        if isinstance(seg, GeodesicSegment):
            segs.append({"type": "geodesic", "a": _point(seg.a), "b": _point(seg.b)})
        else:
            segs.append({"type": "circle_arc", "center": _point(seg.center),
                         "radius": float(seg.radius), "from": _point(seg.a),
                         "to": _point(seg.b)})
    doc: dict = {"format": FORMAT_TAG, "segments": segs}
    if dec is not None:
        feats = []
        for pair in dec.pairs:
            feats.append({"kind": "cw_pair",
                          "a_range": [float(pair.a_range[0]), float(pair.a_range[1])],
                          "b_range": [float(pair.b_range[0]), float(pair.b_range[1])]})
        for arm in dec.arms:
            feats.append({"kind": "arm",
                          "range": [float(arm.start), float(arm.end)],
                          "segments": list(arm.segments)})
        doc["decomposition"] = {"features": feats}
    if metadata is not None:
        doc["metadata"] = metadata
    return doc


def body_from_dict(doc: dict) -> tuple[ConvexBody, Optional[Decomposition], Optional[dict]]:
    if doc.get("format") != FORMAT_TAG:
        raise InvalidBody(f"unsupported format tag {doc.get('format')!r}")
    segs = []
    for rec in doc["segments"]:
        if rec["type"] == "geodesic":
            segs.append(GeodesicSegment(np.array(rec["a"]), np.array(rec["b"])))
        elif rec["type"] == "circle_arc":
            segs.append(ArcSegment(np.array(rec["center"]), float(rec["radius"]),
                                   np.array(rec["from"]), np.array(rec["to"]), True))
        else:
            raise InvalidBody(f"unknown segment type {rec['type']!r}")
    metadata = doc.get("metadata")
    hint = None
    if metadata and isinstance(metadata.get("thickness"), (int, float)):
        hint = float(metadata["thickness"])
    body = ConvexBody(tuple(segs), thickness_hint=hint)
    dec = None
    if "decomposition" in doc and doc["decomposition"] is not None:
        pairs = []
        arms = []
        for feat in doc["decomposition"]["features"]:
            if feat["kind"] == "cw_pair":
                a0, a1 = feat["a_range"]
                b0, b1 = feat["b_range"]
                pairs.append(CurvePair(
                    a_range=(a0, a1), b_range=(b0, b1),
                    a_start=body.boundary_point(a0 % 1.0),
                    a_end=body.boundary_point(a1 % 1.0),
                    b_start=body.boundary_point(b0 % 1.0),
                    b_end=body.boundary_point(b1 % 1.0)))
            elif feat["kind"] == "arm":
                arms.append(Arm(start=feat["range"][0], end=feat["range"][1],
                                segments=tuple(feat.get("segments", ()))))
            else:
                raise InvalidBody(f"unknown decomposition feature {feat['kind']!r}")
        dec = Decomposition(pairs=tuple(pairs), arms=tuple(arms))
    return body, dec, metadata


def dumps_canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def save_body(path, body: ConvexBody, dec: Optional[Decomposition] = None,
              metadata: Optional[dict] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(body_to_dict(body, dec, metadata)))


def load_body(path) -> tuple[ConvexBody, Optional[Decomposition], Optional[dict]]:
    with open(path, "r", encoding="utf-8") as fh:
        return body_from_dict(json.load(fh))
