"""Pleated planes: development, bending data and straightening."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateCoordinate
from .moebius import DISTINCT_TOL, chordal_distance, is_inf
from .representation import BASE_TRIANGLE, FGCoordinates, develop_step
from .surface import IdealTriangulation

ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class DevelopedTriangle:
    triangle: int
    vertices: tuple

    def to_json(self) -> dict:
        def pt(p):
            return "inf" if is_inf(p) else [p.real, p.imag]

        return {"triangle": self.triangle, "vertices": [pt(p) for p in self.vertices]}


def develop(tri: IdealTriangulation, coords: FGCoordinates, spine_path=()) -> list[DevelopedTriangle]:
    """Develop triangles along ``spine_path``, a list of sides to cross.

    Starts from triangle 0 placed at ``(inf, -1, 0)``; each entry is the side
    index (0, 1, 2) of the current triangle to cross next.
    """
    t, pts = 0, BASE_TRIANGLE
    out = [DevelopedTriangle(t, pts)]
    for s in spine_path:
        s = int(s)
        u, r = tri.partner(t, s)
        pts = develop_step(pts, s, coords[tri.edge_of(t, s)], r)
        for i in range(3):
            for j in range(i + 1, 3):
                if chordal_distance(pts[i], pts[j]) < DISTINCT_TOL:
                    raise DegenerateCoordinate(f"vertex collision after crossing into {u}")
        t = u
        out.append(DevelopedTriangle(t, pts))
    return out


@dataclass(frozen=True)
class PleatingData:
    shear: tuple
    angle: tuple
    support: frozenset
    filling: bool

    def to_json(self) -> dict:
        return {
            "shear": list(self.shear),
            "angle": list(self.angle),
            "support": sorted(self.support),
            "filling": self.filling,
        }


def is_filling(tri: IdealTriangulation, support) -> bool:
    """Cut along ``support``; filling iff every piece is a disk.

    A piece is a union of triangles glued along the remaining edges; it is
    simply connected exactly when its dual graph is a tree.
    """
    parent = list(range(tri.n_triangles))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    n_edges = {}
    for e, (t, _, u, _) in enumerate(tri.gluing):
        if e in support:
            continue
        a, b = find(t), find(u)
        if a != b:
            parent[a] = b
    for e, (t, _, u, _) in enumerate(tri.gluing):
        if e not in support:
            root = find(t)
            n_edges[root] = n_edges.get(root, 0) + 1
    n_tris = {}
    for t in range(tri.n_triangles):
        root = find(t)
        n_tris[root] = n_tris.get(root, 0) + 1
    return all(n_edges.get(r, 0) == n - 1 for r, n in n_tris.items())


def bending_data(coords: FGCoordinates, tri: IdealTriangulation | None = None) -> PleatingData:
    shear = tuple(math.log(abs(c)) for c in coords.values)
    angle = []
    for c in coords.values:
        a = cmath.phase(c)
        angle.append(math.pi if a <= -math.pi else a)
    support = frozenset(e for e, a in enumerate(angle) if abs(a) > ANGLE_TOL)
    if not support:
        filling = False
    elif tri is None:
        # without the gluing only the maximal case can be decided
        filling = len(support) == len(angle)
    else:
        filling = is_filling(tri, support)
    return PleatingData(shear, tuple(angle), support, filling)


def straighten(coords: FGCoordinates) -> FGCoordinates:
    """Replace every coordinate by its modulus."""
    return FGCoordinates(tuple(complex(abs(c), 0.0) for c in coords.values))
