"""Command-line driver: gen, thickness, approximate, verify, hausdorff, render.

Exit codes: 0 success, 1 check failure, 2 usage or validation error,
3 certificate failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import io, metrics, render, shapes, width as width_mod
from .approx import approximate
from .body import is_convex
from .errors import CertificateFailed, DecompositionFailed, GeometryError

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_USAGE = 2
EXIT_CERTIFICATE = 3


def _parse_vec(text: str) -> np.ndarray:
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 3:
        raise ValueError("expected three comma-separated coordinates")
    return np.array(parts)


def cmd_gen(args) -> int:
    try:
        if args.kind == "reuleaux":
            if args.sides is None or args.width is None:
                print("gen reuleaux requires --sides and --width", file=sys.stderr)
                return EXIT_USAGE
            body, dec = shapes.reuleaux(args.sides, args.width)
            params = {"sides": args.sides, "width": args.width}
        elif args.kind == "cap":
            if args.radius is None:
                print("gen cap requires --radius", file=sys.stderr)
                return EXIT_USAGE
            center = _parse_vec(args.center) if args.center else np.array([0.0, 0.0, 1.0])
            body, dec = shapes.cap(center, args.radius)
            params = {"radius": args.radius}
        elif args.kind == "quarter-disk":
            if args.radius is None:
                print("gen quarter-disk requires --radius", file=sys.stderr)
                return EXIT_USAGE
            body = shapes.quarter_disk(args.radius)
            try:
                dec = shapes.decompose(body)
            except DecompositionFailed:
                dec = None
            params = {"radius": args.radius}
        else:
            print(f"unknown kind {args.kind!r}", file=sys.stderr)
            return EXIT_USAGE
    except GeometryError as e:
        print(f"invalid parameters: {e}", file=sys.stderr)
        return EXIT_USAGE
    delta, _ = width_mod.thickness(body)
    meta = {"thickness": delta, "generator": args.kind, "parameters": params}
    io.save_body(args.output, body, dec, meta)
    print(f"wrote {args.output} (thickness {delta:.12f})")
    return EXIT_OK


def cmd_thickness(args) -> int:
    try:
        body, _, _ = io.load_body(args.file)
        delta, chord = width_mod.thickness(body)
    except (GeometryError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(f"thickness {delta:.12f}")
    print(f"chord {list(map(float, chord.f))} -> {list(map(float, chord.g))}")
    return EXIT_OK


def cmd_approximate(args) -> int:
    if not 0.0 < args.eps < math.pi / 2.0:
        print("eps must be in (0, pi/2)", file=sys.stderr)
        return EXIT_USAGE
    try:
        body, dec, meta = io.load_body(args.input)
    except (GeometryError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if dec is None:
        print("input file carries no decomposition", file=sys.stderr)
        return EXIT_USAGE
    try:
        result, nets, report = approximate(body, dec, args.eps)
    except CertificateFailed as e:
        print(f"certificate failed: {e}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    out_meta = {"thickness": report["delta_out"], "generator": "approximate",
                "parameters": {"eps": args.eps, "source": str(args.input)}}
    if args.output:
        if report["trivial"]:
            io.save_body(args.output, body, dec, meta)
        else:
            io.save_body(args.output, result)
    if args.report:
        doc = dict(report)
        doc["nets"] = [{
            "chords": [[list(map(float, c.f)), list(map(float, c.g))] for c in net.chords],
            "o": [list(map(float, o)) for o in net.crossings],
            "c": [list(map(float, c)) for c in net.apexes],
            "k": [list(map(float, k)) for k in (net.a_corners or [])],
            "l": [list(map(float, l)) for l in (net.b_corners or [])],
        } for net in nets]
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(io.dumps_canonical(doc))
    status = "trivial (no constant-width pair); input returned unchanged" \
        if report["trivial"] else f"certified bound {report['certified_bound']:.6g}"
    print(f"thickness {report['delta_in']:.12f} -> {report['delta_out']:.12f}; {status}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        body, _, _ = io.load_body(args.file)
    except (GeometryError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    tol = args.tol
    failed = False
    ok, why = is_convex(body)
    print(f"convex: {'ok' if ok else f'FAIL ({why})'}")
    failed |= not ok
    delta = None
    if ok:
        delta, _ = width_mod.thickness(body)
        print(f"thickness: {delta:.12f}")
        if args.thickness is not None:
            dev = abs(delta - args.thickness)
            good = dev <= tol
            print(f"thickness vs {args.thickness}: deviation {dev:.3e} "
                  f"{'ok' if good else 'FAIL'}")
            failed |= not good
        if args.constant_width:
            cw, dev = width_mod.is_constant_width(body, tol)
            print(f"constant width: deviation {dev:.3e} {'ok' if cw else 'FAIL'}")
            failed |= not cw
    elif args.thickness is not None or args.constant_width:
        print("skipping width checks on a non-convex body")
    return EXIT_CHECK if failed else EXIT_OK


def cmd_hausdorff(args) -> int:
    try:
        a, _, _ = io.load_body(args.a)
        b, _, _ = io.load_body(args.b)
    except (GeometryError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    res = metrics.hausdorff(a, b, samples=args.samples)
    print(f"hausdorff {res.value:.12f} (a->b {res.directed_ab:.12f}, "
          f"b->a {res.directed_ba:.12f}, {res.resolution} samples)")
    return EXIT_OK


def cmd_render(args) -> int:
    try:
        bodies = [io.load_body(f)[0] for f in args.files]
        overlays = None
        if args.overlay:
            with open(args.overlay, "r", encoding="utf-8") as fh:
                overlays = json.load(fh).get("nets")
        view = _parse_vec(args.view) if args.view else np.array([0.0, 0.0, 1.0])
        svg = render.render_svg(bodies, projection=args.projection, view=view,
                                arc_samples=args.arc_samples, overlays=overlays)
    except (GeometryError, OSError, json.JSONDecodeError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sconvex",
                                description="Spherical convex bodies: width, "
                                            "thickness and arc approximation")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a canonical body file")
    g.add_argument("kind", choices=["reuleaux", "cap", "quarter-disk"])
    g.add_argument("--sides", type=int)
    g.add_argument("--width", type=float)
    g.add_argument("--radius", type=float)
    g.add_argument("--center", help="cap center as x,y,z")
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("thickness", help="thickness and realizing chord")
    t.add_argument("file")
    t.set_defaults(func=cmd_thickness)

    a = sub.add_parser("approximate", help="replace curve pairs by arc chains")
    a.add_argument("input")
    a.add_argument("--eps", type=float, required=True)
    a.add_argument("-o", "--output")
    a.add_argument("--report")
    a.set_defaults(func=cmd_approximate)

    v = sub.add_parser("verify", help="convexity / thickness / constant width checks")
    v.add_argument("file")
    v.add_argument("--constant-width", action="store_true")
    v.add_argument("--thickness", type=float)
    v.add_argument("--tol", type=float, default=1e-6)
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("hausdorff", help="Hausdorff distance between two bodies")
    h.add_argument("a")
    h.add_argument("b")
    h.add_argument("--samples", type=int, default=2048)
    h.set_defaults(func=cmd_hausdorff)

    r = sub.add_parser("render", help="render bodies to SVG")
    r.add_argument("files", nargs="+")
    r.add_argument("--projection", choices=["orthographic", "stereographic"],
                   default="orthographic")
    r.add_argument("--view", help="view axis as x,y,z")
    r.add_argument("--overlay", help="report JSON with nets to overlay")
    r.add_argument("--arc-samples", type=int, default=64)
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
