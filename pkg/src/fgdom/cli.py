"""Command line front end.

Exit status: 0 for strict certificates and plain reports, 2 for certificates
that are not strict, 1 for errors (error JSON on stderr).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import serialize as io
from .domination import (
    AUDIT_TOL,
    coaxial_stub,
    degenerate_dominator_a,
    dominate,
    strict_dominator_filling,
)
from .errors import FGDomError, SchemaError
from .moebius import translation_length
from .pleat import bending_data, develop, straighten
from .representation import (
    FramedRepresentation,
    FGCoordinates,
    boundary_invariant,
    coaxial_character,
    detect_degeneracy,
    fg_from_framed,
    holonomy_from_fg,
)
from .curves import curve_word, enumerate_simple, word_holonomy
from .strip import realize_arc, strip_deform, verify_strict_increase
from .surface import flip, standard_triangulation


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sidecar(out: str | None, ext: str) -> str | None:
    return None if not out else os.path.splitext(out)[0] + ext


def _verdict_status(verdict: str) -> int:
    return 0 if verdict == "strict" else 2


def _load_tri(args):
    if args.triangulation:
        return io.read_triangulation(io.load(args.triangulation))
    if args.genus is not None:
        return standard_triangulation(args.genus, args.punctures)
    return None


def _load_source(args, tri=None):
    """The representation or coordinates named on the command line."""
    if getattr(args, "rep", None):
        rho = io.read_rep(io.load(args.rep), tri)
        return rho, rho.triangulation
    if getattr(args, "coords", None):
        data = io.load(args.coords)
        if tri is None and isinstance(data, dict) and "triangulation" in data:
            tri = io.read_triangulation(data["triangulation"])
        return io.read_coords(data, tri), tri
    raise SchemaError("need --rep or --coords")


def _random_coords(tri, rng, real=False):
    logs = rng.uniform(-1.0, 1.0, tri.n_edges)
    if real:
        return FGCoordinates(tuple(complex(math.exp(v)) for v in logs))
    ang = rng.uniform(-math.pi, math.pi, tri.n_edges)
    return FGCoordinates(tuple(complex(math.exp(v) * math.cos(a), math.exp(v) * math.sin(a)) for v, a in zip(logs, ang)))


# --- subcommands -------------------------------------------------------------


def cmd_triangulate(args):
    tri = _load_tri(args)
    if tri is None:
        raise SchemaError("need --triangulation or --genus/--punctures")
    for e in args.flip or ():
        tri = flip(tri, e)
    doc = tri.to_json()
    doc["n_edges"] = tri.n_edges
    doc["links"] = [[list(c) for c in link] for link in tri.links]
    doc["euler_characteristic"] = 2 - 2 * tri.genus - tri.punctures
    _emit(io.dumps(doc), args.out)
    return 0


def cmd_coords(args):
    tri = _load_tri(args)
    if args.random:
        if tri is None:
            raise SchemaError("--random needs a triangulation")
        rng = np.random.default_rng(args.seed)
        coords = _random_coords(tri, rng, real=args.real)
        rho = holonomy_from_fg(tri, coords)
    else:
        src, tri = _load_source(args, tri)
        if isinstance(src, FramedRepresentation):
            rho = src.validate()
            coords = fg_from_framed(rho)
        else:
            if tri is None:
                raise SchemaError("coordinates need a triangulation")
            coords = src
            rho = holonomy_from_fg(tri, coords)
    back = fg_from_framed(rho)
    doc = coords.to_json()
    doc["triangulation"] = tri.to_json()
    doc["round_trip_error"] = max(abs(a - b) for a, b in zip(coords.values, back.values))
    doc["relation_residual"] = rho.relation_residual()
    doc["boundary"] = [
        {"puncture": i, "length": length, "class": cls.value}
        for i, (length, cls) in ((i, boundary_invariant(tri, coords, i)) for i in range(tri.punctures))
    ]
    if args.emit_rep:
        with open(args.emit_rep, "w") as fh:
            fh.write(io.dumps(rho.to_json()))
    _emit(io.dumps(doc), args.out)
    return 0


def cmd_straighten(args):
    src, tri = _load_source(args, _load_tri(args))
    coords = fg_from_framed(src) if isinstance(src, FramedRepresentation) else src
    j0 = straighten(coords)
    doc = j0.to_json()
    doc["bending"] = bending_data(coords, tri).to_json()
    _emit(io.dumps(doc), args.out)
    return 0


def _write_certificate(cert, args):
    _emit(io.dumps(cert.to_json()), args.out)
    csv_path = _sidecar(args.out, ".csv")
    if csv_path:
        with open(csv_path, "w") as fh:
            fh.write(cert.to_csv())
        if cert.reports:
            from .plotting import length_scatter

            length_scatter(cert.reports, _sidecar(args.out, ".png"))


def cmd_dominate(args):
    src, tri = _load_source(args, _load_tri(args))
    if args.j:
        j = io.read_coords(io.load(args.j), tri)
        cert = dominate(src, j, args.max_weight, tri, args.tolerance, args.jobs)
    else:
        rho = src if isinstance(src, FramedRepresentation) else holonomy_from_fg(tri, src)
        kind = detect_degeneracy(rho).kind
        if kind == "degenerate_a":
            _, cert = degenerate_dominator_a(tri.genus, tri.punctures, args.max_weight, rho=rho, seed=None)
        elif kind == "degenerate_coaxial":
            cert = coaxial_stub(rho, args.max_weight)
        else:
            _, cert = strict_dominator_filling(rho, args.max_weight, args.tolerance, args.jobs)
    _write_certificate(cert, args)
    return _verdict_status(cert.verdict)


def cmd_strip(args):
    src, tri = _load_source(args, _load_tri(args))
    if isinstance(src, FramedRepresentation):
        src = fg_from_framed(src)
    specs = io.read_arcs(io.load(args.arcs))
    arcs = [realize_arc(src, a["path"], tri, waist=a["waist"]) for a in specs]
    j_t = strip_deform(src, arcs, [a["width"] for a in specs], tri)
    cert = verify_strict_increase(src, j_t, args.max_weight, tri)
    doc = cert.to_json()
    doc["arcs"] = [a.to_json() for a in arcs]
    doc["deformed"] = j_t.to_json()
    doc["relation_residual"] = j_t.relation_residual()
    _emit(io.dumps(doc), args.out)
    csv_path = _sidecar(args.out, ".csv")
    if csv_path:
        with open(csv_path, "w") as fh:
            fh.write(cert.to_csv())
        from .plotting import length_scatter

        length_scatter(cert.reports, _sidecar(args.out, ".png"), xlabel="l_j_t", ylabel="l_j")
    return _verdict_status(cert.verdict)


def cmd_classify(args):
    src, tri = _load_source(args, _load_tri(args))
    rho = src if isinstance(src, FramedRepresentation) else holonomy_from_fg(tri, src)
    deg = detect_degeneracy(rho)
    doc = {"schema": io.SCHEMA, **deg.to_json()}
    if deg.kind == "degenerate_coaxial":
        doc["character"] = coaxial_character(rho, deg.axis)
    _emit(io.dumps(doc), args.out)
    return 0


def cmd_spectrum(args):
    src, tri = _load_source(args, _load_tri(args))
    j = io.read_coords(io.load(args.j), tri) if args.j else None
    lines = ["weights,l_rho" + (",l_j" if j else "")]
    rows = []
    for c in enumerate_simple(tri, args.max_weight):
        word = curve_word(tri, c)
        lr = translation_length(word_holonomy(src, tri, word))
        row = [";".join(map(str, c.weights)), repr(lr)]
        if j is not None:
            lj = translation_length(word_holonomy(j, tri, word))
            row.append(repr(lj))
            rows.append((c.weights, lr, lj))
        lines.append(",".join(row))
    _emit("\n".join(lines) + "\n", args.out)
    png = _sidecar(args.out, ".png")
    if png and rows:
        from .domination import CurveReport
        from .plotting import length_scatter

        length_scatter([CurveReport(w, lr, lj, 0.0) for w, lr, lj in rows], png)
    return 0


def cmd_develop(args):
    src, tri = _load_source(args, _load_tri(args))
    coords = fg_from_framed(src) if isinstance(src, FramedRepresentation) else src
    path = [int(s) for s in args.path.split(",")] if args.path else []
    tris = develop(tri, coords, path)
    doc = {"schema": io.SCHEMA, "triangles": [t.to_json() for t in tris]}
    _emit(io.dumps(doc), args.out)
    if args.svg:
        from .plotting import develop_figure

        develop_figure(tris, args.svg)
    return 0


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fgdom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, source=True):
        sp.add_argument("--triangulation", help="gluing JSON")
        sp.add_argument("--genus", type=int)
        sp.add_argument("--punctures", type=int, default=1)
        if source:
            sp.add_argument("--rep", help="framed representation JSON")
            sp.add_argument("--coords", help="coordinate JSON")
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    sp = common(sub.add_parser("triangulate", help="build, validate or flip a triangulation"), source=False)
    sp.add_argument("--flip", type=int, action="append", help="edge to flip (repeatable)")
    sp.set_defaults(func=cmd_triangulate)

    sp = common(sub.add_parser("coords", help="coordinates and round-trip report"))
    sp.add_argument("--random", action="store_true", help="sample coordinates from --seed")
    sp.add_argument("--real", action="store_true", help="with --random: real positive values")
    sp.add_argument("--emit-rep", help="also write the reconstructed representation here")
    sp.set_defaults(func=cmd_coords)

    sp = common(sub.add_parser("straighten", help="moduli of the coordinates and bending data"))
    sp.set_defaults(func=cmd_straighten)

    for name, func, helptext in (
        ("dominate", cmd_dominate, "domination certificate"),
        ("spectrum", cmd_spectrum, "simple length table"),
    ):
        sp = common(sub.add_parser(name, help=helptext))
        sp.add_argument("--j", help="comparison coordinates (default: straightened input)")
        sp.add_argument("--max-weight", type=int, default=6)
        sp.add_argument("--tolerance", type=float, default=AUDIT_TOL)
        sp.add_argument("--jobs", type=int, default=1)
        sp.set_defaults(func=func)

    sp = common(sub.add_parser("strip", help="strip deformation and lengthening check"))
    sp.add_argument("--arcs", required=True, help="arc list JSON")
    sp.add_argument("--max-weight", type=int, default=6)
    sp.set_defaults(func=cmd_strip)

    sp = common(sub.add_parser("classify", help="degeneracy class"))
    sp.set_defaults(func=cmd_classify)

    sp = common(sub.add_parser("develop", help="develop triangles along a path of sides"))
    sp.add_argument("--path", default="", help="comma separated side indices")
    sp.add_argument("--svg", help="write a disk-model picture")
    sp.set_defaults(func=cmd_develop)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FGDomError as exc:
        sys.stderr.write(json.dumps(exc.to_json()) + "\n")
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
