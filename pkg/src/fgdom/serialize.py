"""JSON helpers shared by the command line tools."""
from __future__ import annotations

import json
import math

from .errors import SchemaError
from .moebius import INF, is_inf
from .representation import FGCoordinates, fg_from_json, framed_from_json
from .surface import IdealTriangulation, standard_triangulation, triangulation_from_json

SCHEMA = 1


def encode_point(p):
    return "inf" if is_inf(p) else [float(p.real), float(p.imag)]


def decode_point(v) -> complex:
    if v == "inf":
        return INF
    if isinstance(v, (int, float)):
        return complex(v)
    try:
        re, im = v
        return complex(float(re), float(im))
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad point {v!r}") from exc


def _clean(obj):
    # JSON has no inf/nan; write them as strings so output stays parseable
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), indent=2) + "\n"


def load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}", path=str(path)) from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg})", path=str(path), line=exc.lineno) from exc


def require(data, *keys, where="input"):
    if not isinstance(data, dict):
        raise SchemaError(f"{where}: expected an object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise SchemaError(f"{where}: missing {', '.join(missing)}", missing=missing)
    return data


def read_triangulation(data) -> IdealTriangulation:
    """Accepts a gluing object or ``{"standard": [genus, punctures]}``."""
    if isinstance(data, dict) and "standard" in data:
        g, k = data["standard"]
        return standard_triangulation(int(g), int(k))
    require(data, "genus", "punctures", "gluing", where="triangulation")
    try:
        return triangulation_from_json(data)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"triangulation: {exc}") from exc


def read_coords(data, tri: IdealTriangulation | None = None) -> FGCoordinates:
    require(data, "coords", where="coordinates")
    try:
        return fg_from_json(data, None if tri is None else tri.n_edges)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"coordinates: {exc}") from exc


def read_rep(data, tri=None):
    require(data, "generators", where="representation")
    if tri is None:
        require(data, "triangulation", where="representation")
    try:
        return framed_from_json(data, tri)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"representation: {exc}") from exc


def read_arcs(data) -> list[dict]:
    arcs = data["arcs"] if isinstance(data, dict) else data
    out = []
    for a in arcs:
        require(a, "path", "width", where="arc")
        out.append({"path": [int(e) for e in a["path"]], "width": float(a["width"]), "waist": a.get("waist", "auto")})
    return out


def curves_to_json(curves) -> list:
    return [c.to_json()["weights"] for c in curves]
