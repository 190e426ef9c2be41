"""Simple closed curves in normal coordinates and their holonomy."""
from __future__ import annotations

import math

from .errors import BudgetExceeded, DisconnectedCurve
from .hyperbolic import geodesic_distance, horoball_distance
from .moebius import IsometryClass, MoebiusMap, classify, fixed_points, to_zero_one_inf
from .representation import (
    FGCoordinates,
    FramedRepresentation,
    TriangleFrames,
    frames_from_fg,
    path_word,
)
from .surface import (
    CrossingWord,
    IdealTriangulation,
    NormalCurve,
    corner_counts,
    is_peripheral,
    trace_normal_curve,
)

MAX_WEIGHT_GUARD = 64
DEFAULT_BUDGET = 10 ** 6


def _weight_vectors(tri: IdealTriangulation, max_weight: int, budget: int):
    """Admissible weight vectors with entries <= max_weight (depth-first)."""
    n = tri.n_edges
    # triangles become checkable once their largest edge id is assigned
    ready = [[] for _ in range(n)]
    for t in range(tri.n_triangles):
        ready[max(tri.triangle_edges(t))].append(t)
    w = [0] * n
    visited = 0

    def rec(i):
        nonlocal visited
        if i == n:
            yield tuple(w)
            return
        for x in range(max_weight + 1):
            visited += 1
            if visited > budget:
                raise BudgetExceeded(
                    f"enumeration exceeded {budget} candidate vectors", budget=budget
                )
            w[i] = x
            if all(corner_counts(tri, w, t) is not None for t in ready[i]):
                yield from rec(i + 1)
        w[i] = 0

    yield from rec(0)


def curve_word(tri: IdealTriangulation, curve: NormalCurve) -> CrossingWord:
    comps = trace_normal_curve(tri, curve)
    if len(comps) != 1:
        raise DisconnectedCurve(f"curve has {len(comps)} components", components=len(comps))
    return comps[0]


def _reference_frames(tri: IdealTriangulation) -> TriangleFrames:
    return frames_from_fg(tri, FGCoordinates((1.0,) * tri.n_edges))


def enumerate_simple(tri: IdealTriangulation, max_weight: int,
                     budget: int = DEFAULT_BUDGET) -> list[NormalCurve]:
    """Essential non-peripheral simple closed curves with weights <= max_weight.

    Sorted by total weight, then lexicographically.
    """
    if max_weight > MAX_WEIGHT_GUARD:
        raise ValueError(f"max_weight is capped at {MAX_WEIGHT_GUARD}")
    if max_weight <= 0:
        return []
    ref = _reference_frames(tri)
    found = []
    for w in _weight_vectors(tri, max_weight, budget):
        if not any(w):
            continue
        c = NormalCurve(w)
        comps = trace_normal_curve(tri, c)
        if len(comps) != 1 or is_peripheral(tri, comps[0]):
            continue
        # the cusped all-ones structure is faithful: trivial holonomy means null-homotopic
        if ref.holonomy(comps[0].crossings()).distance_from_identity() < 1e-9:
            continue
        found.append(c)
    found.sort(key=lambda c: (c.total, c.weights))
    return found


def based_crossings(tri: IdealTriangulation, word: CrossingWord) -> list:
    crossings = word.crossings()
    t0 = crossings[0][0]
    to = tri.tree_path(t0)
    return to + crossings + tri.reverse_path(to, t0)


def word_holonomy(source, tri: IdealTriangulation, word: CrossingWord) -> MoebiusMap:
    """Holonomy of a crossing word, for coordinates, frames or a representation."""
    if isinstance(source, FramedRepresentation):
        return source.evaluate(path_word(tri, based_crossings(tri, word)))
    if isinstance(source, FGCoordinates):
        source = frames_from_fg(tri, source)
    return source.holonomy(word.crossings())


def curve_holonomy(tri: IdealTriangulation, coords, curve: NormalCurve) -> MoebiusMap:
    return word_holonomy(coords, tri, curve_word(tri, curve))


def reversed_word(tri: IdealTriangulation, word: CrossingWord) -> CrossingWord:
    """The same loop traversed backwards."""
    steps = [(t, o, i) for t, i, o in reversed(word.steps)]
    from .surface import _word

    return _word(tri, steps)


def _link_from_corner(tri: IdealTriangulation, t: int, v: int) -> list:
    link = tri.links[tri.corner_puncture[(t, v)]]
    k = link.index((t, v))
    return list(link[k:] + link[:k])


#: horocycle length bounding the standard cusp neighbourhood
HOROCYCLE_LENGTH = 1.0


def boundary_margin(tri: IdealTriangulation, coords: FGCoordinates, curve: NormalCurve) -> float:
    """Least distance from the curve's axis to peripheral axes or horoballs.

    Scans the developed triangles met in one period of the curve.
    """
    if not coords.is_real_positive:
        raise ValueError("boundary_margin needs real positive coordinates")
    word = curve_word(tri, curve)
    frames = frames_from_fg(tri, coords)
    hol = frames.holonomy(word.crossings())
    axis = tuple(fixed_points(hol))
    if len(axis) != 2:
        raise ValueError("curve holonomy is not hyperbolic")
    margin = math.inf
    acc = MoebiusMap.identity()
    for t, s in word.crossings():
        for v in range(3):
            p = acc(frames.points[t][v])
            local = frames.holonomy(_link_from_corner(tri, t, v))
            periph = local.conj(acc)
            cls = classify(local)
            if cls is IsometryClass.LOXODROMIC:
                # map the fixed points; conjugating first can merge them numerically
                d = geodesic_distance(axis, tuple(acc(q) for q in fixed_points(local)))
            else:
                # chart sending p to infinity, parabolic becomes z -> z + tau
                other = acc(frames.points[t][(v + 1) % 3])
                third = acc(frames.points[t][(v + 2) % 3])
                chart = to_zero_one_inf(other, third, p)
                tau = abs(periph.conj(chart).b)
                d = horoball_distance(axis, p, chart, tau / HOROCYCLE_LENGTH)
            margin = min(margin, d)
        acc = acc @ frames.crossing(t, s)
    return margin
