"""Strip deformations of Fuchsian structures with funnel ends.

An arc is given as the list of edges it crosses.  It is realized as the
common perpendicular of the peripheral axes at the two vertices it runs
between, and a strip of width ``t`` is inserted along every lift by a
holonomy cocycle: crossing a lift from one side to the other composes
with the translation by ``t`` along the perpendicular through that
lift's waist.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .curves import _link_from_corner, curve_word, enumerate_simple, word_holonomy
from .domination import CurveReport, assemble
from .errors import ArcsIntersect, CuspExit, TangledPath
from .hyperbolic import (
    common_perpendicular,
    geodesics_cross,
    intersection,
    normalizer,
    perpendicular_through,
    point_distance,
    project,
    side_of,
    translation_along,
)
from .moebius import (
    INF,
    IsometryClass,
    MoebiusMap,
    classify,
    fixed_points,
    is_inf,
    to_zero_one_inf,
    translation_length,
)
from .representation import FGCoordinates, FramedRepresentation, frames_from_fg, generator_loops

#: hyperbolic distance swept along each end axis when listing lifts
FAN_REACH = 6.0
_KEY_DIGITS = 9


def _key(geod):
    def k(p):
        return ("inf",) if is_inf(p) else (round(complex(p).real, _KEY_DIGITS),)
    return tuple(sorted(k(p) for p in geod))


def _apply(m: MoebiusMap, geod):
    return tuple(INF if is_inf(w := m(p)) else complex(complex(w).real) for p in geod)


def path_crossings(tri, path) -> list[tuple[int, int]]:
    """Turn an edge sequence into crossings ``(triangle, side)``.

    The first edge is crossed from the side listed first in the gluing.
    """
    if not path:
        raise TangledPath("empty arc path")
    t, s, _, _ = tri.gluing[path[0]]
    out = [(t, s)]
    for e in path[1:]:
        u, r = tri.partner(*out[-1])
        for side in ((r + 1) % 3, (r + 2) % 3):
            if tri.edge_of(u, side) == e:
                out.append((u, side))
                break
        else:
            raise TangledPath(f"edge {e} is not a side of triangle {u}", path=list(path))
    return out


@dataclass(frozen=True)
class StripArc:
    path: tuple
    crossings: tuple
    geodesic: tuple  # realized endpoints, start end first
    waist: complex
    start_axis: tuple
    end_axis: tuple
    atlas: tuple  # (triangle, M): the geodesic meets the lift M * points[triangle]

    def to_json(self) -> dict:
        def pt(p):
            return "inf" if is_inf(p) else complex(p).real
        return {
            "path": list(self.path),
            "geodesic": [pt(p) for p in self.geodesic],
            "waist": [self.waist.real, self.waist.imag],
        }


def _fan(frames, lift: MoebiusMap, t: int, v: int):
    tri = frames.triangulation
    link = _link_from_corner(tri, t, v)
    partial, acc = [], MoebiusMap.identity()
    for c in link:
        partial.append((c[0], acc))
        acc = acc @ frames.crossing(*c)
    g = lift @ acc @ lift.inverse()
    return g, [(tri_t, lift @ h) for tri_t, h in partial]


def _axis(g: MoebiusMap, vertex):
    fps = fixed_points(g)
    other = [p for p in fps if not _same(p, vertex)]
    return (vertex, other[0] if other else fps[-1])


def _same(p, q, tol=1e-9) -> bool:
    if is_inf(p) or is_inf(q):
        return is_inf(p) and is_inf(q)
    return abs(complex(p) - complex(q)) <= tol * max(1.0, abs(complex(p)))


def _place_waist(geod, axes, foot, waist) -> complex:
    if waist is None or waist == "auto":
        return foot
    if waist == "mid":
        other = intersection(axes[1], geod)[0]
        m = normalizer(*geod)
        y = math.sqrt(m(foot).imag * m(other).imag)
        return m.inverse()(complex(0.0, y))
    z = complex(*waist) if isinstance(waist, (list, tuple)) else complex(waist)
    if z.imag <= 0:
        raise ValueError("waist must lie in the upper half-plane")
    # project onto the realized geodesic
    return project(geod, z)


def realize_arc(j: FGCoordinates, path, tri, waist=None, frames=None) -> StripArc:
    """Geodesic representative of the arc crossing ``path``, perpendicular at both funnels."""
    if not j.is_real_positive:
        raise ValueError("strip deformations need real positive coordinates")
    frames = frames or frames_from_fg(tri, j)
    crossings = path_crossings(tri, path)
    lifts = [MoebiusMap.identity()]
    for c in crossings:
        lifts.append(lifts[-1] @ frames.crossing(*c))
    t0, s0 = crossings[0]
    tn, rn = tri.partner(*crossings[-1])
    ends = [(MoebiusMap.identity(), t0, (s0 + 2) % 3), (lifts[-1], tn, (rn + 2) % 3)]
    axes, atlas = [], []
    for lift, t, v in ends:
        g, fan = _fan(frames, lift, t, v)
        if classify(g) != IsometryClass.LOXODROMIC or translation_length(g) < 1e-9:
            raise CuspExit(f"arc ends at a cusp (triangle {t}, corner {v})", puncture=tri.corner_puncture[(t, v)])
        vertex = lift(frames.points[t][v])
        axes.append(_axis(g, vertex))
        radius = max(1, math.ceil(FAN_REACH / translation_length(g)))
        for n in range(-radius, radius + 1):
            gn = g ** n
            atlas.extend((ft, gn @ m) for ft, m in fan)
    try:
        geod = common_perpendicular(*axes)
    except ValueError as exc:
        raise TangledPath("peripheral axes are not ultraparallel", path=list(path)) from exc
    foot = intersection(axes[0], geod)[0]
    # orient from the start funnel to the end funnel
    if side_of(axes[0], geod[0]) == side_of(axes[0], intersection(axes[1], geod)[0]):
        geod = (geod[1], geod[0])
    for i, (t, s) in enumerate(crossings):
        p = frames.points[t]
        edge = _apply(lifts[i], (p[s], p[(s + 1) % 3]))
        if not geodesics_cross(geod, edge):
            raise TangledPath(f"realized arc misses crossing {i} (edge {path[i]})", path=list(path), index=i)
    atlas.extend((t, lifts[i]) for i, (t, _) in enumerate(crossings))
    atlas.append((tn, lifts[-1]))
    w = _place_waist(geod, axes, foot, waist)
    return StripArc(tuple(path), tuple(crossings), geod, complex(w), axes[0], axes[1], tuple(atlas))


def _lifts_through(arc: StripArc, t: int, m: MoebiusMap):
    """Lifts of ``arc`` that may pass through the triangle ``m * points[t]``."""
    for ft, a in arc.atlas:
        if ft == t:
            g = m @ a.inverse()
            yield g


#: interior reference point of (0, 1, inf); off-centre so symmetric arcs miss it
_PROBE = complex(0.37, 0.61)


def _probe(points) -> complex:
    z = to_zero_one_inf(*points).inverse()(_PROBE)
    return z if z.imag > 0 else z.conjugate()


def _crossing_translations(frames, arcs, widths, loop, cache=None):
    """Product of the strip translations met along a dual loop, in order.

    ``cache`` pins one geodesic and translation per lift so that crossing a
    lift and coming back cancels exactly, also across loops.
    """
    tri = frames.triangulation
    cache = {} if cache is None else cache
    lift = MoebiusMap.identity()
    out = MoebiusMap.identity()
    centre = _probe(frames.points[loop[0][0]])
    for t, s in loop:
        nxt_lift = lift @ frames.crossing(t, s)
        u, _ = tri.partner(t, s)
        nxt_centre = nxt_lift(_probe(frames.points[u]))
        found = {}
        for n, (arc, width) in enumerate(zip(arcs, widths)):
            if width == 0:
                continue
            for tt, mm in ((t, lift), (u, nxt_lift)):
                for g in _lifts_through(arc, tt, mm):
                    key = (n, _key(_apply(g, arc.geodesic)))
                    if key in found:
                        continue
                    if key not in cache:
                        cache[key] = [_apply(g, arc.geodesic), g(arc.waist), None]
                    entry = cache[key]
                    geod = entry[0]
                    a, b = side_of(geod, centre), side_of(geod, nxt_centre)
                    if a * b < 0:
                        if entry[2] is None:
                            axis = perpendicular_through(geod, entry[1])
                            entry[2] = (axis, translation_along(axis, width))
                        axis, tau = entry[2]
                        found[key] = (geod, tau if side_of(geod, axis[1]) == b else tau.inverse())
        # several lifts may separate the same pair of points: order them along the segment
        for geod, tau in sorted(found.values(), key=lambda it: _param(centre, nxt_centre, it[0])):
            out = out @ tau
        lift, centre = nxt_lift, nxt_centre
    return out


def _segment_line(z0, z1):
    z0, z1 = complex(z0), complex(z1)
    if abs(z1.real - z0.real) < 1e-14 * max(1.0, abs(z0), abs(z1)):
        return (complex(z0.real), INF)
    x0 = (abs(z1) ** 2 - abs(z0) ** 2) / (2 * (z1.real - z0.real))
    r = abs(z0 - x0)
    return (complex(x0 - r), complex(x0 + r))


def _param(z0, z1, geod) -> float:
    """Distance from ``z0`` to where ``geod`` cuts the segment ``[z0, z1]``."""
    return point_distance(z0, intersection(_segment_line(z0, z1), geod)[0])


def check_disjoint(arcs) -> None:
    for i, a in enumerate(arcs):
        for b in arcs[i:]:
            for t, m in a.atlas:
                for g in _lifts_through(b, t, m):
                    geod = _apply(g, b.geodesic)
                    if a is b and _key(geod) == _key(a.geodesic):
                        continue
                    if geodesics_cross(a.geodesic, geod):
                        raise ArcsIntersect(
                            f"arcs {list(a.path)} and {list(b.path)} cross",
                            first=list(a.path), second=list(b.path),
                        )


def strip_deform(j: FGCoordinates, arcs, widths, tri) -> FramedRepresentation:
    """Holonomy of ``j`` with strips of the given widths inserted along ``arcs``."""
    widths = [float(w) for w in widths]
    if len(widths) != len(arcs):
        raise ValueError("one width per arc")
    if any(w < 0 for w in widths):
        raise ValueError("widths must be nonnegative")
    check_disjoint(arcs)
    frames = frames_from_fg(tri, j)
    gens, cache = {}, {}
    for name, loop in generator_loops(tri).items():
        base = frames.holonomy(loop)
        gens[name] = base if not any(widths) else _crossing_translations(frames, arcs, widths, loop, cache) @ base
    return FramedRepresentation(tri, gens)


def verify_strict_increase(j: FGCoordinates, j_t: FramedRepresentation, max_weight: int, tri=None):
    """Certificate for ``sup l_j / l_{j_t}`` over simple curves and boundary classes."""
    tri = tri or j_t.triangulation
    frames = frames_from_fg(tri, j)
    reports = []
    for c in enumerate_simple(tri, max_weight):
        word = curve_word(tri, c)
        lj = translation_length(word_holonomy(frames, tri, word))
        lt = translation_length(word_holonomy(j_t, tri, word))
        reports.append(CurveReport(c.weights, lj, lt, lj / lt if lt > 0 else math.inf))
    base = FramedRepresentation(tri, {n: frames.holonomy(l) for n, l in generator_loops(tri).items()})
    for i in range(tri.punctures):
        lj = translation_length(base.peripheral(i))
        lt = translation_length(j_t.peripheral(i))
        weights = tuple(tri.link_weights(i))
        reports.append(CurveReport(weights, lj, lt, lj / lt if lt > 0 else (0.0 if lj == 0 else math.inf)))
    return assemble(reports, (), max_weight, notes={"case": "strip", "boundary_included": True})
