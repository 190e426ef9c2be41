"""Ideal triangulations of punctured surfaces and normal curves.

Conventions
-----------
Triangle ``t`` has corners 0, 1, 2 in counter-clockwise order; side ``s``
runs from corner ``s`` to corner ``s + 1``.  Gluing side ``(t, s)`` to
``(u, r)`` always reverses orientation: corner ``s`` of ``t`` is identified
with corner ``r + 1`` of ``u``.  Edge ids are positions in the gluing list.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    FGDomError,
    InadmissibleWeights,
    NonNegativeEuler,
    SelfGluedEdge,
    UnpairedSide,
    WrongPunctureCount,
)


class GenusMismatch(FGDomError):
    code = "GenusMismatch"


Side = tuple  # (triangle, side)


@dataclass(frozen=True)
class IdealTriangulation:
    genus: int
    punctures: int
    n_triangles: int
    gluing: tuple  # ((t, s, u, r), ...) one entry per edge

    @property
    def n_edges(self) -> int:
        return len(self.gluing)

    @property
    def edges(self) -> range:
        return range(len(self.gluing))

    @cached_property
    def _side_table(self) -> dict:
        table = {}
        for e, (t, s, u, r) in enumerate(self.gluing):
            table[(t, s)] = (e, 0, (u, r))
            table[(u, r)] = (e, 1, (t, s))
        return table

    def partner(self, t: int, s: int) -> tuple[int, int]:
        return self._side_table[(t, s)][2]

    def edge_of(self, t: int, s: int) -> int:
        return self._side_table[(t, s)][0]

    def side_sign(self, t: int, s: int) -> int:
        """+1 if ``(t, s)`` is the first side listed for its edge, else -1."""
        return 1 if self._side_table[(t, s)][1] == 0 else -1

    def triangle_edges(self, t: int) -> tuple[int, int, int]:
        return tuple(self.edge_of(t, s) for s in range(3))

    def next_corner(self, t: int, v: int) -> tuple[int, int]:
        """Step around the vertex at corner ``(t, v)`` by crossing side ``v``."""
        u, r = self.partner(t, v)
        return u, (r + 1) % 3

    @cached_property
    def links(self) -> tuple:
        """Corner cycles around each puncture, in discovery order."""
        seen = set()
        cycles = []
        for t in range(self.n_triangles):
            for v in range(3):
                if (t, v) in seen:
                    continue
                cyc = []
                c = (t, v)
                while c not in seen:
                    seen.add(c)
                    cyc.append(c)
                    c = self.next_corner(*c)
                cycles.append(tuple(cyc))
        return tuple(cycles)

    @cached_property
    def corner_puncture(self) -> dict:
        return {c: i for i, cyc in enumerate(self.links) for c in cyc}

    def link_edges(self, i: int) -> list[int]:
        """Edges crossed walking once around puncture ``i`` (with multiplicity)."""
        return [self.edge_of(t, v) for t, v in self.links[i]]

    def link_weights(self, i: int) -> tuple[int, ...]:
        w = [0] * self.n_edges
        for e in self.link_edges(i):
            w[e] += 1
        return tuple(w)

    @cached_property
    def spanning_tree(self) -> tuple[frozenset, dict]:
        """Breadth-first dual spanning tree rooted at triangle 0.

        Returns the set of tree edges and ``parent[t] = (u, s)``: ``t`` is
        reached from ``u`` by crossing side ``s`` of ``u``.
        """
        parent = {0: None}
        tree = set()
        queue = deque([0])
        while queue:
            t = queue.popleft()
            for s in range(3):
                u, _ = self.partner(t, s)
                if u not in parent:
                    parent[u] = (t, s)
                    tree.add(self.edge_of(t, s))
                    queue.append(u)
        return frozenset(tree), parent

    def tree_path(self, t: int) -> list[tuple[int, int]]:
        """Crossings ``(triangle, side)`` leading from triangle 0 to ``t``."""
        parent = self.spanning_tree[1]
        path = []
        while parent[t] is not None:
            u, s = parent[t]
            path.append((u, s))
            t = u
        return path[::-1]

    def reverse_path(self, path, end: int) -> list[tuple[int, int]]:
        """Crossings retracing ``path`` backwards from its final triangle ``end``."""
        out = []
        t = end
        for u, s in reversed(path):
            w, r = self.partner(u, s)
            assert w == t
            out.append((w, r))
            t = u
        return out

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "genus": self.genus,
            "punctures": self.punctures,
            "gluing": [list(g) for g in self.gluing],
        }


def build_triangulation(genus: int, punctures: int, gluing) -> IdealTriangulation:
    genus, punctures = int(genus), int(punctures)
    if genus < 0 or punctures < 1:
        raise NonNegativeEuler("need genus >= 0 and at least one puncture")
    if 2 - 2 * genus - punctures >= 0:
        raise NonNegativeEuler(
            f"Euler characteristic {2 - 2 * genus - punctures} is not negative",
            genus=genus,
            punctures=punctures,
        )
    rows = []
    for row in gluing:
        if len(row) != 4:
            raise UnpairedSide(f"gluing entry {row!r} is not [t, s, t', s']")
        rows.append(tuple(int(x) for x in row))
    n_tri = 4 * genus - 4 + 2 * punctures
    seen = {}
    for e, (t, s, u, r) in enumerate(rows):
        for side in ((t, s), (u, r)):
            if not (0 <= side[0] < n_tri and 0 <= side[1] < 3):
                raise UnpairedSide(f"side {side} out of range", edge=e)
            if side in seen:
                raise UnpairedSide(f"side {side} is glued twice", edge=e)
            seen[side] = e
    missing = [(t, s) for t in range(n_tri) for s in range(3) if (t, s) not in seen]
    if missing:
        raise UnpairedSide(f"unpaired sides {missing}", sides=[list(m) for m in missing])
    tri = IdealTriangulation(genus, punctures, n_tri, tuple(rows))
    if len(tri.links) != punctures:
        raise WrongPunctureCount(
            f"gluing has {len(tri.links)} puncture links, expected {punctures}",
            links=len(tri.links),
        )
    if len(tri.spanning_tree[1]) != n_tri:
        raise GenusMismatch("gluing does not give a connected surface")
    return tri


def _flip_data(tri: IdealTriangulation, e: int):
    t, s, u, r = tri.gluing[e]
    if t == u:
        raise SelfGluedEdge(f"edge {e} has both sides in triangle {t}", edge=e)
    # quadrilateral P, W, Q, R (counter-clockwise); new diagonal W R
    # new t = (W, Q, R), new u = (R, P, W)
    side_map = {
        (t, (s + 1) % 3): (t, 1),
        (u, (r + 2) % 3): (t, 0),
        (t, (s + 2) % 3): (u, 0),
        (u, (r + 1) % 3): (u, 1),
    }
    rows = []
    for f, (a, b, c, d) in enumerate(tri.gluing):
        if f == e:
            rows.append((t, 2, u, 2))
        else:
            a, b = side_map.get((a, b), (a, b))
            c, d = side_map.get((c, d), (c, d))
            rows.append((a, b, c, d))
    return rows, side_map


def flip(tri: IdealTriangulation, e: int) -> IdealTriangulation:
    rows, _ = _flip_data(tri, e)
    return build_triangulation(tri.genus, tri.punctures, rows)


def canonical_form(tri: IdealTriangulation) -> tuple:
    """Relabelling-invariant code; equal codes mean isomorphic triangulations."""
    best = None
    for t0 in range(tri.n_triangles):
        for rot0 in range(3):
            label = {t0: (0, rot0)}
            order = [t0]
            code = []
            i = 0
            while i < len(order):
                t = order[i]
                _, rot = label[t]
                for s_loc in range(3):
                    s = (s_loc + rot) % 3
                    u, r = tri.partner(t, s)
                    if u not in label:
                        label[u] = (len(order), r)
                        order.append(u)
                    idx_u, rot_u = label[u]
                    code.append((idx_u, (r - rot_u) % 3))
                i += 1
            code = tuple(code)
            if best is None or code < best:
                best = code
    return (tri.genus, tri.punctures, best)


def _subdivide(n_tri: int, rows: list, t: int) -> tuple[int, list]:
    """Cone triangle ``t`` off to a new puncture (two new triangles)."""
    new = [t, n_tri, n_tri + 1]
    out = []
    for a, b, c, d in rows:
        if a == t:
            a, b = new[b], 0
        if c == t:
            c, d = new[d], 0
        out.append((a, b, c, d))
    for i in range(3):
        out.append((new[i], 1, new[(i + 1) % 3], 2))
    return n_tri + 2, out


def standard_triangulation(genus: int, punctures: int) -> IdealTriangulation:
    """A fixed triangulation of ``S_{g,k}``.

    Genus ``g >= 1``: fan triangulation of the ``4g``-gon with the word
    ``a1 b1 a1^-1 b1^-1 ...``; genus 0: the doubled triangle.  Further
    punctures are added by coning off triangle 0.
    """
    if 2 - 2 * genus - punctures >= 0 or punctures < 1 or genus < 0:
        raise NonNegativeEuler("Euler characteristic must be negative")
    if genus == 0:
        n_tri = 2
        rows = [(0, 0, 1, 0), (0, 1, 1, 2), (0, 2, 1, 1)]
        k0 = 3
    else:
        n = 4 * genus
        n_tri = n - 2

        def poly_side(j):
            if j == 0:
                return (0, 0)
            if j == n - 1:
                return (n - 3, 2)
            return (j - 1, 1)

        rows = []
        for blk in range(genus):
            for off in (0, 1):
                j = 4 * blk + off
                rows.append(poly_side(j) + poly_side(j + 2))
        for m in range(n_tri - 1):
            rows.append((m, 2, m + 1, 0))
        # list polygon-side edges before diagonals only for genus one, so the
        # once-punctured torus reads (a, b, diagonal)
        k0 = 1
    for _ in range(punctures - k0):
        n_tri, rows = _subdivide(n_tri, rows, 0)
    return build_triangulation(genus, punctures, rows)


@dataclass(frozen=True)
class NormalCurve:
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def __add__(self, other: "NormalCurve") -> "NormalCurve":
        return NormalCurve(tuple(a + b for a, b in zip(self.weights, other.weights)))

    @property
    def total(self) -> int:
        return sum(self.weights)

    def to_json(self) -> dict:
        return {"weights": {str(e): w for e, w in enumerate(self.weights)}}


def corner_counts(tri: IdealTriangulation, weights, t: int) -> tuple[int, int, int] | None:
    """Arc counts at the three corners of ``t``, or None if inadmissible."""
    w = [weights[tri.edge_of(t, s)] for s in range(3)]
    if sum(w) % 2:
        return None
    n = tuple((w[(v - 1) % 3] + w[v] - w[(v + 1) % 3]) // 2 for v in range(3))
    if min(n) < 0:
        return None
    return n


def is_admissible(tri: IdealTriangulation, weights) -> bool:
    if len(weights) != tri.n_edges or min(weights, default=0) < 0:
        return False
    return all(corner_counts(tri, weights, t) is not None for t in range(tri.n_triangles))


@dataclass(frozen=True)
class CrossingWord:
    """One closed normal loop: ``steps[i] = (triangle, in_side, out_side)``.

    Leaving ``steps[i]`` through ``out_side`` enters ``steps[i + 1]``.
    """

    steps: tuple
    tokens: tuple = field(compare=False)

    def __len__(self):
        return len(self.steps)

    def crossings(self) -> list[tuple[int, int]]:
        """The loop as a closed dual path of ``(triangle, side)`` crossings."""
        return [(t, o) for t, _, o in self.steps]

    def corners(self) -> list[tuple[int, int]]:
        out = []
        for t, i, o in self.steps:
            out.append((t, i) if o == (i - 1) % 3 else (t, o))
        return out


def _word(tri, steps) -> CrossingWord:
    tokens = tuple(
        (tri.edge_of(t, o), "left" if o == (i - 1) % 3 else "right") for t, i, o in steps
    )
    return CrossingWord(tuple(steps), tokens)


def trace_normal_curve(tri: IdealTriangulation, curve: NormalCurve) -> list[CrossingWord]:
    w = curve.weights
    if not is_admissible(tri, w):
        raise InadmissibleWeights(f"weights {list(w)} violate the triangle conditions")
    counts = {t: corner_counts(tri, w, t) for t in range(tri.n_triangles)}

    def side_w(t, s):
        return w[tri.edge_of(t, s)]

    def through(t, s, p):
        """Enter ``t`` through side ``s`` at position ``p`` (from corner ``s``)."""
        n = counts[t]
        if p < n[s]:
            # arc around corner s, leaves through side s-1
            o = (s - 1) % 3
            return (t, s, p), o, side_w(t, o) - 1 - p
        k = side_w(t, s) - 1 - p
        o = (s + 1) % 3
        return (t, (s + 1) % 3, k), o, k

    used = set()
    comps = []
    for t in range(tri.n_triangles):
        for v in range(3):
            for k in range(counts[t][v]):
                if (t, v, k) in used:
                    continue
                # enter through side v-1 so that the first step turns at corner v
                s_in = (v - 1) % 3
                pos = side_w(t, s_in) - 1 - k
                start = (t, s_in, pos)
                steps = []
                cur = start
                while True:
                    arc, o, p_out = through(*cur)
                    used.add(arc)
                    steps.append((cur[0], cur[1], o))
                    u, r = tri.partner(cur[0], o)
                    cur = (u, r, side_w(u, r) - 1 - p_out)
                    if cur == start:
                        break
                comps.append(_word(tri, steps))
    return comps


def is_peripheral(tri: IdealTriangulation, word: CrossingWord) -> bool:
    corners = word.corners()
    cs = set(corners)
    if len(cs) != len(corners):
        return False
    return any(cs == set(link) for link in tri.links)


def triangulation_from_json(data: dict) -> IdealTriangulation:
    return build_triangulation(data["genus"], data["punctures"], data["gluing"])
