"""Framed representations, Fock-Goncharov coordinates and degeneracy.

The working object is :class:`TriangleFrames`: for every triangle the
framing images of the corners of one chosen lift, and for every edge the
group element relating the chosen lifts on its two sides.  Holonomy of any
closed dual path is the ordered product of the crossing elements.

Presentation of the surface group
---------------------------------
Generators are ``x<e>`` for each edge ``e`` outside the breadth-first dual
spanning tree (a free basis), plus ``c<k-1>`` for the loop around the last
puncture.  The single relation says ``c<k-1>`` equals its link word in the
free basis.  Peripheral words for the other punctures are link words.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    DegenerateInput,
    InvalidRepresentation,
    NonGenericFraming,
    NotCoaxial,
)
from .moebius import (
    INF,
    IsometryClass,
    MoebiusMap,
    chordal_distance,
    classify,
    cross_ratio,
    fixed_points,
    is_inf,
    map_triple,
    point,
)
from .surface import IdealTriangulation, SelfGluedEdge, _flip_data, build_triangulation

#: default tolerance for the relation and for framing fixed points
REP_TOL = 1e-8
COORD_MIN, COORD_MAX = 1e-12, 1e12
BASE_TRIANGLE = (INF, complex(-1.0), complex(0.0))


@dataclass(frozen=True)
class FGCoordinates:
    values: tuple

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        for e, v in enumerate(vals):
            if not (cmath.isfinite(v) and COORD_MIN < abs(v) < COORD_MAX):
                raise ValueError(f"coordinate on edge {e} is degenerate: {v}")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, e):
        return self.values[e]

    @property
    def is_real_positive(self) -> bool:
        return all(abs(v.imag) <= 1e-12 * abs(v) and v.real > 0 for v in self.values)

    def close_to(self, other: "FGCoordinates", tol=1e-8) -> bool:
        return max(abs(a - b) for a, b in zip(self.values, other.values)) <= tol

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "coords": {str(e): [v.real, v.imag] for e, v in enumerate(self.values)},
        }


# --- combinatorics of the presentation -------------------------------------


@dataclass(frozen=True)
class Presentation:
    free: tuple  # non-tree edge ids, increasing
    last: str  # name of the extra peripheral generator
    peripheral: tuple  # word per puncture, words are tuples of (name, +-1)
    relation: tuple

    @property
    def generators(self) -> list[str]:
        return [f"x{e}" for e in self.free] + [self.last]


def path_word(tri: IdealTriangulation, crossings) -> tuple:
    tree = tri.spanning_tree[0]
    word = []
    for t, s in crossings:
        e = tri.edge_of(t, s)
        if e not in tree:
            word.append((f"x{e}", tri.side_sign(t, s)))
    return tuple(word)


def link_loop(tri: IdealTriangulation, i: int) -> list[tuple[int, int]]:
    """Closed dual path based at triangle 0 running once around puncture ``i``."""
    link = tri.links[i]
    t0 = link[0][0]
    to = tri.tree_path(t0)
    return to + list(link) + tri.reverse_path(to, t0)


def generator_loop(tri: IdealTriangulation, e: int) -> list[tuple[int, int]]:
    t, s, u, _ = tri.gluing[e]
    return tri.tree_path(t) + [(t, s)] + tri.reverse_path(tri.tree_path(u), u)


def presentation(tri: IdealTriangulation) -> Presentation:
    tree = tri.spanning_tree[0]
    free = tuple(e for e in tri.edges if e not in tree)
    k = tri.punctures
    last = f"c{k - 1}"
    words = [path_word(tri, link_loop(tri, i)) for i in range(k)]
    relation = ((last, -1),) + words[-1]
    words[-1] = ((last, 1),)
    return Presentation(free, last, tuple(words), relation)


def generator_loops(tri: IdealTriangulation) -> dict:
    pres = presentation(tri)
    loops = {f"x{e}": generator_loop(tri, e) for e in pres.free}
    loops[pres.last] = link_loop(tri, tri.punctures - 1)
    return loops


def evaluate_word(images: dict, word) -> MoebiusMap:
    out = MoebiusMap.identity()
    for name, sgn in word:
        g = images[name]
        out = out @ (g if sgn > 0 else g.inverse())
    return out


# --- framed representations --------------------------------------------------


@dataclass(frozen=True)
class FramedRepresentation:
    triangulation: IdealTriangulation
    generators: dict  # name -> MoebiusMap
    framing: tuple = ()  # sphere point per puncture (may be empty if unframed)
    tol: float = field(default=REP_TOL, compare=False)

    @cached_property
    def presentation(self) -> Presentation:
        return presentation(self.triangulation)

    def evaluate(self, word) -> MoebiusMap:
        return evaluate_word(self.generators, word)

    def peripheral(self, i: int) -> MoebiusMap:
        return self.evaluate(self.presentation.peripheral[i])

    def relation_residual(self) -> float:
        return self.evaluate(self.presentation.relation).distance_from_identity()

    def framing_residual(self) -> float:
        if not self.framing:
            return 0.0
        return max(
            chordal_distance(self.peripheral(i)(p), p) for i, p in enumerate(self.framing)
        )

    def validate(self) -> "FramedRepresentation":
        names = set(self.presentation.generators)
        if set(self.generators) != names:
            raise InvalidRepresentation(
                f"generator names {sorted(self.generators)} != {sorted(names)}"
            )
        r = self.relation_residual()
        if r > self.tol:
            raise InvalidRepresentation(f"relation residual {r:.3g} exceeds {self.tol}")
        if self.framing:
            if len(self.framing) != self.triangulation.punctures:
                raise InvalidRepresentation("need one framing point per puncture")
            f = self.framing_residual()
            if f > self.tol:
                raise InvalidRepresentation(
                    f"framing point not fixed by peripheral (residual {f:.3g})"
                )
        return self

    def conjugate(self, a: MoebiusMap) -> "FramedRepresentation":
        gens = {n: g.conj(a) for n, g in self.generators.items()}
        return FramedRepresentation(
            self.triangulation, gens, tuple(a(p) for p in self.framing), self.tol
        )

    def to_json(self) -> dict:
        def mat(g):
            return [[v.real, v.imag] for v in (g.a, g.b, g.c, g.d)]

        def pt(p):
            return "inf" if is_inf(p) else [p.real, p.imag]

        return {
            "schema": 1,
            "triangulation": self.triangulation.to_json(),
            "generators": {n: mat(g) for n, g in sorted(self.generators.items())},
            "framing": {str(i): pt(p) for i, p in enumerate(self.framing)},
        }


def develop_step(points, s: int, c: complex, r: int):
    """Corner positions of the neighbour across side ``s``.

    ``points`` are the corners of the current triangle; the neighbour meets
    it along its side ``r``.
    """
    p_s, p_s1, p_s2 = points[s], points[(s + 1) % 3], points[(s + 2) % 3]
    m = map_triple((p_s1, p_s2, p_s), BASE_TRIANGLE)
    z = m.inverse()(c)
    out = [None, None, None]
    out[(r + 1) % 3] = p_s
    out[r] = p_s1
    out[(r + 2) % 3] = z
    return tuple(out)


@dataclass
class TriangleFrames:
    triangulation: IdealTriangulation
    points: list  # per triangle, 3 sphere points
    glue: list  # per edge, MoebiusMap
    frame: list | None = None  # per triangle, map from the base triangle
    coords: FGCoordinates | None = None

    def crossing(self, t: int, s: int) -> MoebiusMap:
        h = self.glue[self.triangulation.edge_of(t, s)]
        return h if self.triangulation.side_sign(t, s) > 0 else h.inverse()

    def holonomy(self, crossings) -> MoebiusMap:
        crossings = list(crossings)
        if self.frame is None or not crossings:
            out = MoebiusMap.identity()
            for t, s in crossings:
                out = out @ self.crossing(t, s)
            return out
        # frame[t] @ step @ frame[u]^-1 per crossing; the inner frames cancel
        tri = self.triangulation
        out = self.frame[crossings[0][0]]
        for t, s in crossings:
            u, r = tri.partner(t, s)
            out = out @ _step_map(s, self.coords[tri.edge_of(t, s)], r)
        return out @ self.frame[u].inverse()

    def quadruple(self, e: int, from_second: bool = False):
        t, s, u, r = self.triangulation.gluing[e]
        h = self.glue[e]
        if from_second:
            t, s, u, r = u, r, t, s
            h = h.inverse()
        p = self.points[t]
        return (p[(s + 1) % 3], p[(s + 2) % 3], p[s], h(self.points[u][(r + 2) % 3]))

    def coordinate(self, e: int, from_second: bool = False) -> complex:
        try:
            return cross_ratio(*self.quadruple(e, from_second))
        except Exception as exc:  # DegenerateQuadruple
            raise NonGenericFraming(
                f"framing points around edge {e} are not distinct", edge=e
            ) from exc

    def coordinates(self, check_lifts: bool = True, tol: float = REP_TOL) -> FGCoordinates:
        vals = []
        for e in self.triangulation.edges:
            c = self.coordinate(e)
            if check_lifts:
                c2 = self.coordinate(e, from_second=True)
                if abs(c - c2) > tol * max(1.0, abs(c)):
                    raise InvalidRepresentation(
                        f"edge {e}: lifts disagree ({c} vs {c2}); framing not equivariant"
                    )
            if not (COORD_MIN < abs(c) < COORD_MAX) or not cmath.isfinite(c):
                raise NonGenericFraming(f"coordinate on edge {e} degenerates", edge=e)
            vals.append(c)
        return FGCoordinates(tuple(vals))

    def to_framed(self, tol: float = REP_TOL) -> FramedRepresentation:
        tri = self.triangulation
        gens = {name: self.holonomy(loop) for name, loop in generator_loops(tri).items()}
        framing = tuple(self.points[t][v] for t, v in (lk[0] for lk in tri.links))
        return FramedRepresentation(tri, gens, framing, tol)

    def flip(self, e: int) -> "TriangleFrames":
        """Flip edge ``e``, carrying the framing data to the new triangles."""
        tri = self.triangulation
        t, s, u, r = tri.gluing[e]
        if t == u:
            raise SelfGluedEdge(f"edge {e} has both sides in triangle {t}", edge=e)
        rows, side_map = _flip_data(tri, e)
        new_tri = build_triangulation(tri.genus, tri.punctures, rows)
        h = self.glue[e]
        pt = self.points[t]
        P, Q, R = pt[s], pt[(s + 1) % 3], pt[(s + 2) % 3]
        W = h(self.points[u][(r + 2) % 3])
        points = list(self.points)
        points[t] = (W, Q, R)
        points[u] = (R, P, W)
        glue = list(self.glue)
        old_u_sides = {(u, (r + 1) % 3), (u, (r + 2) % 3)}
        for f, (a, b, c, d) in enumerate(tri.gluing):
            if f == e:
                glue[f] = MoebiusMap.identity()
                continue
            g = self.glue[f]
            if (a, b) in old_u_sides:
                g = h @ g
            if (c, d) in old_u_sides:
                g = g @ h.inverse()
            glue[f] = g
        return TriangleFrames(new_tri, points, glue)


def _step_map(s: int, c: complex, r: int) -> MoebiusMap:
    """Map from the base triangle to its neighbour across side ``s``."""
    return map_triple(BASE_TRIANGLE, develop_step(BASE_TRIANGLE, s, c, r))


def frames_from_fg(tri: IdealTriangulation, coords: FGCoordinates) -> TriangleFrames:
    if len(coords) != tri.n_edges:
        raise ValueError("one coordinate per edge required")
    tree, parent = tri.spanning_tree
    # compose step matrices rather than refitting maps to developed points,
    # which cluster and lose precision on larger surfaces
    frame = [None] * tri.n_triangles
    frame[0] = MoebiusMap.identity()
    order = sorted(range(tri.n_triangles), key=lambda t: len(tri.tree_path(t)))
    for t in order[1:]:
        u, s = parent[t]
        _, r = tri.partner(u, s)
        frame[t] = frame[u] @ _step_map(s, coords[tri.edge_of(u, s)], r)
    points = [tuple(f(p) for p in BASE_TRIANGLE) for f in frame]
    points[0] = BASE_TRIANGLE
    glue = []
    for e, (t, s, u, r) in enumerate(tri.gluing):
        if e in tree:
            glue.append(MoebiusMap.identity())
        else:
            glue.append(frame[t] @ _step_map(s, coords[e], r) @ frame[u].inverse())
    return TriangleFrames(tri, points, glue, frame, coords)


def frames_from_framed(rho_hat: FramedRepresentation) -> TriangleFrames:
    tri = rho_hat.triangulation
    tree = tri.spanning_tree[0]
    glue = [
        MoebiusMap.identity() if e in tree else rho_hat.generators[f"x{e}"]
        for e in tri.edges
    ]
    frames = TriangleFrames(tri, [None] * tri.n_triangles, glue)
    corner_pts = {}
    for i, link in enumerate(tri.links):
        p = point(rho_hat.framing[i])
        for t, v in link:
            corner_pts[(t, v)] = p
            nt, nv = tri.next_corner(t, v)
            p = frames.crossing(t, v).inverse()(p)
    frames.points = [tuple(corner_pts[(t, v)] for v in range(3)) for t in range(tri.n_triangles)]
    return frames


def fg_from_framed(rho_hat: FramedRepresentation) -> FGCoordinates:
    """Fock-Goncharov coordinates; raises NonGenericFraming naming the edge."""
    rho_hat.validate()
    if not rho_hat.framing:
        raise InvalidRepresentation("representation carries no framing")
    return frames_from_framed(rho_hat).coordinates(tol=max(rho_hat.tol, 1e-8))


def fg_with_flips(rho_hat: FramedRepresentation, max_flips: int | None = None):
    """Flip offending edges until the coordinates are defined.

    Returns ``(triangulation, coordinates, flipped_edges)``.
    """
    rho_hat.validate()
    frames = frames_from_framed(rho_hat)
    tri = rho_hat.triangulation
    budget = 10 * tri.n_edges if max_flips is None else max_flips
    flipped = []
    while True:
        try:
            return frames.triangulation, frames.coordinates(), flipped
        except NonGenericFraming as err:
            if len(flipped) >= budget:
                raise
            e = err.details["edge"]
            try:
                frames = frames.flip(e)
            except SelfGluedEdge:
                # pick another flippable edge next to it
                tri_now = frames.triangulation
                cands = [f for f in tri_now.edges if tri_now.gluing[f][0] != tri_now.gluing[f][2]]
                e = cands[len(flipped) % len(cands)]
                frames = frames.flip(e)
            flipped.append(e)


def holonomy_from_fg(tri: IdealTriangulation, coords: FGCoordinates) -> FramedRepresentation:
    return frames_from_fg(tri, coords).to_framed()


# --- boundary and degeneracy -------------------------------------------------


def boundary_invariant(tri: IdealTriangulation, coords: FGCoordinates, puncture: int,
                       tol: float = 1e-10):
    """Translation length and isometry class of the monodromy at a puncture."""
    vals = [coords[e] for e in tri.link_edges(puncture)]
    log_sum = sum(math.log(abs(v)) for v in vals)
    length = abs(log_sum)
    if length > tol:
        return length, IsometryClass.LOXODROMIC
    arg = sum(cmath.phase(v) for v in vals)
    k = round(arg / (2 * math.pi))
    if abs(arg - 2 * math.pi * k) <= 1e-9:
        return 0.0, IsometryClass.PARABOLIC
    return 0.0, IsometryClass.ELLIPTIC


def boundary_log_sum(tri, coords, puncture) -> float:
    return sum(math.log(abs(coords[e])) for e in tri.link_edges(puncture))


@dataclass(frozen=True)
class DegeneracyClass:
    kind: str  # nondegenerate | degenerate_a | degenerate_coaxial
    axis: tuple = ()
    fixed_point: object = None

    def to_json(self) -> dict:
        def pt(p):
            return "inf" if is_inf(p) else [p.real, p.imag]

        out = {"kind": self.kind}
        if self.axis:
            out["axis"] = [pt(p) for p in self.axis]
        if self.fixed_point is not None:
            out["fixed_point"] = pt(self.fixed_point)
        return out


def _fixes(g: MoebiusMap, p, tol) -> bool:
    return chordal_distance(g(p), p) <= tol


def _dedupe(points, tol):
    out = []
    for p in points:
        if all(chordal_distance(p, q) > tol for q in out):
            out.append(p)
    return out


def _point_key(p):
    return (1, 0.0, 0.0) if is_inf(p) else (0, p.real, p.imag)


def _rep_images(rho):
    if isinstance(rho, FramedRepresentation):
        names = rho.presentation.generators
        gens = [rho.generators[n] for n in names]
        periph = [rho.peripheral(i) for i in range(rho.triangulation.punctures)]
        return gens, periph
    raise TypeError("expected a FramedRepresentation")


def detect_degeneracy(rho: FramedRepresentation, tol: float = REP_TOL) -> DegeneracyClass:
    gens, periph = _rep_images(rho)
    nontriv = [g for g in gens if classify(g, tol) is not IsometryClass.IDENTITY]

    # (a): a common fixed point, every peripheral parabolic or trivial
    cands = _dedupe([p for g in nontriv for p in fixed_points(g)], 1e-6)
    common = [p for p in cands if all(_fixes(g, p, tol) for g in nontriv)]
    periph_ok = all(
        classify(c, tol) in (IsometryClass.PARABOLIC, IsometryClass.IDENTITY) for c in periph
    )
    if periph_ok and (common or not nontriv):
        return DegeneracyClass("degenerate_a", fixed_point=common[0] if common else INF)

    # (b): an invariant pair of points fixed by every peripheral
    pool = list(nontriv) + [g @ h for g in nontriv for h in nontriv] + list(periph)
    cands = _dedupe([p for g in pool for p in fixed_points(g)], 1e-6)
    cands.sort(key=_point_key)
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            p, q = cands[i], cands[j]
            ok = True
            for g in gens:
                gp, gq = g(p), g(q)
                direct = chordal_distance(gp, p) <= tol and chordal_distance(gq, q) <= tol
                swap = chordal_distance(gp, q) <= tol and chordal_distance(gq, p) <= tol
                if not (direct or swap):
                    ok = False
                    break
            if ok and all(_fixes(c, p, tol) and _fixes(c, q, tol) for c in periph):
                return DegeneracyClass("degenerate_coaxial", axis=(p, q))
    return DegeneracyClass("nondegenerate")


def axis_normalizer(axis) -> MoebiusMap:
    """Map sending the ordered axis ``(p, q)`` to ``(0, inf)``."""
    p, q = sorted((point(axis[0]), point(axis[1])), key=_point_key)
    if is_inf(q):
        return MoebiusMap(1, -p, 0, 1)
    return MoebiusMap(1, -p, 1, -q)


def axis_action(g: MoebiusMap, axis, tol: float = REP_TOL) -> tuple[int, float]:
    """``(orientation, m)`` with ``g`` acting on the axis as ``x -> eps x + m``."""
    a = axis_normalizer(axis)
    G = g.conj(a)
    scale = max(abs(G.a), abs(G.b), abs(G.c), abs(G.d))
    # read m off the larger entry: the smaller one is its reciprocal and
    # carries all the cancellation error
    if abs(G.b) <= tol * scale and abs(G.c) <= tol * scale:
        a, d = abs(G.a), abs(G.d)
        return 1, 2.0 * math.log(a) if a >= d else -2.0 * math.log(d)
    if abs(G.a) <= tol * scale and abs(G.d) <= tol * scale:
        b, c = abs(G.b), abs(G.c)
        return -1, 2.0 * math.log(b) if b >= c else -2.0 * math.log(c)
    raise NotCoaxial("element does not preserve the axis")


def coaxial_character(rho: FramedRepresentation, axis, tol: float = REP_TOL) -> dict:
    """Signed translation along the invariant axis for each generator."""
    out = {}
    for name in rho.presentation.generators:
        out[name] = axis_action(rho.generators[name], axis, tol)[1]
    return out


def word_character(rho: FramedRepresentation, axis, word, tol: float = REP_TOL) -> float:
    """Character of a word via the cocycle rule ``m(gh) = m(g) + eps(g) m(h)``."""
    eps_total, m_total = 1, 0.0
    for name, sgn in word:
        eps, m = axis_action(rho.generators[name], axis, tol)
        if sgn < 0:
            # inverse of x -> eps x + m is x -> eps x - eps m
            m = -eps * m
        m_total += eps_total * m
        eps_total *= eps
    return m_total


#: framing used at a puncture whose monodromy is trivial
TRIVIAL_MONODROMY_FRAMING = complex(0.61803398875, 0.5)


def choose_framing_point(m: MoebiusMap, tol: float = REP_TOL) -> complex:
    cls = classify(m, tol)
    if cls is IsometryClass.IDENTITY:
        return TRIVIAL_MONODROMY_FRAMING
    fps = fixed_points(m)
    if cls is IsometryClass.LOXODROMIC:
        # the attracting fixed point of the inverse peripheral
        return fps[-1]
    if cls is IsometryClass.PARABOLIC:
        return fps[0]
    return sorted(fps, key=_point_key)[0]


def frame_from_representation(tri: IdealTriangulation, generators: dict,
                              tol: float = REP_TOL) -> FramedRepresentation:
    bare = FramedRepresentation(tri, dict(generators), (), tol).validate()
    if detect_degeneracy(bare, tol).kind != "nondegenerate":
        raise DegenerateInput("representation is degenerate; no framing chosen")
    framing = tuple(choose_framing_point(bare.peripheral(i), tol) for i in range(tri.punctures))
    return FramedRepresentation(tri, dict(generators), framing, tol).validate()


def framed_from_json(data: dict, tri: IdealTriangulation | None = None,
                     tol: float = REP_TOL) -> FramedRepresentation:
    from .surface import triangulation_from_json

    if tri is None:
        tri = triangulation_from_json(data["triangulation"])
    gens = {}
    for name, entries in data["generators"].items():
        vals = [complex(re, im) for re, im in entries]
        gens[name] = MoebiusMap(*vals)
    framing = ()
    if data.get("framing"):
        fr = data["framing"]
        framing = tuple(
            point(fr[str(i)] if isinstance(fr[str(i)], str) else complex(*fr[str(i)]))
            for i in range(tri.punctures)
        )
    return FramedRepresentation(tri, gens, framing, tol)


def fg_from_json(data: dict, n_edges: int | None = None) -> FGCoordinates:
    coords = data["coords"]
    n = len(coords) if n_edges is None else n_edges
    return FGCoordinates(tuple(complex(*coords[str(e)]) for e in range(n)))
