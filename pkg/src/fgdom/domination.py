"""Length-spectrum comparison and domination certificates."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput, NotFilling, ZeroBend, ZeroDenominator
from .hyperbolic import intersection, point_distance
from .moebius import MoebiusMap, bend_angle_beta, bent_endpoint_distance, fixed_points, translation_length
from .pleat import bending_data, straighten
from .representation import (
    FGCoordinates,
    FramedRepresentation,
    boundary_invariant,
    coaxial_character,
    detect_degeneracy,
    fg_from_framed,
    frames_from_fg,
    holonomy_from_fg,
)
from .curves import curve_word, enumerate_simple, word_holonomy
from .surface import IdealTriangulation, NormalCurve, standard_triangulation

SCHEMA = 1
STRICT_MARGIN = 1e-9
AUDIT_TOL = 1e-8


def _weights(m) -> tuple:
    return tuple(int(m[str(e)]) for e in range(len(m)))


@dataclass(frozen=True)
class CurveReport:
    weights: tuple
    l_rho: float
    l_j: float
    ratio: float

    def to_json(self) -> dict:
        return {
            "weights": {str(e): w for e, w in enumerate(self.weights)},
            "l_rho": self.l_rho,
            "l_j": self.l_j,
            "ratio": self.ratio,
        }


@dataclass(frozen=True)
class BoundaryEntry:
    puncture: int
    target: float
    l_j: float
    l_rho: float

    def passes(self, tol=AUDIT_TOL) -> bool:
        return abs(self.target - self.l_j) <= tol and abs(self.target - self.l_rho) <= tol


@dataclass(frozen=True)
class DominationCertificate:
    reports: tuple
    sup_ratio: float
    witness: tuple | None
    boundary_audit: tuple
    max_weight: int
    verdict: str  # strict | non_strict | violated | unsupported_construction
    notes: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "verdict": self.verdict,
            "sup_ratio": self.sup_ratio,
            "witness": None if self.witness is None else {str(e): w for e, w in enumerate(self.witness)},
            "max_weight": self.max_weight,
            "boundary_audit": [
                {"puncture": b.puncture, "target": b.target, "l_j": b.l_j, "l_rho": b.l_rho}
                for b in self.boundary_audit
            ],
            "curves": [r.to_json() for r in self.reports],
            "notes": self.notes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "DominationCertificate":
        reports = tuple(
            CurveReport(_weights(r["weights"]), r["l_rho"], r["l_j"], r["ratio"]) for r in data["curves"]
        )
        audit = tuple(
            BoundaryEntry(b["puncture"], b["target"], b["l_j"], b["l_rho"]) for b in data["boundary_audit"]
        )
        w = data["witness"]
        return cls(reports, data["sup_ratio"], None if w is None else _weights(w), audit,
                   data["max_weight"], data["verdict"], data.get("notes", {}))

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["weights", "l_rho", "l_j", "ratio"])
        for r in self.reports:
            wr.writerow([";".join(map(str, r.weights)), repr(r.l_rho), repr(r.l_j), repr(r.ratio)])
        return buf.getvalue()


def _lengths_job(args):
    tri, rho, j, weights = args
    word = curve_word(tri, NormalCurve(weights))
    return (
        translation_length(word_holonomy(rho, tri, word)),
        translation_length(word_holonomy(j, tri, word)),
    )


def _rho_boundary(rho, tri, i) -> float:
    if isinstance(rho, FramedRepresentation):
        return translation_length(rho.peripheral(i))
    return boundary_invariant(tri, rho, i)[0]


def assemble(reports, audit, max_weight, tol=AUDIT_TOL, notes=None) -> DominationCertificate:
    if reports:
        k = max(range(len(reports)), key=lambda i: (reports[i].ratio, -i))
        sup, witness = reports[k].ratio, reports[k].weights
    else:
        sup, witness = 0.0, None
    if not all(b.passes(tol) for b in audit):
        verdict = "violated"
    elif sup < 1.0 - STRICT_MARGIN:
        verdict = "strict"
    else:
        verdict = "non_strict"
    return DominationCertificate(tuple(reports), sup, witness, tuple(audit), max_weight, verdict, notes or {})


def dominate(rho, j: FGCoordinates, max_weight: int, tri: IdealTriangulation | None = None,
             tolerance: float = AUDIT_TOL, jobs: int = 1, targets=None) -> DominationCertificate:
    """Compare the simple length spectra of ``rho`` and the Fuchsian ``j``.

    ``rho`` is a framed representation or coordinates over the same
    triangulation.  ``targets`` defaults to the boundary lengths of ``rho``.
    """
    if isinstance(rho, FramedRepresentation):
        tri = rho.triangulation
    if tri is None:
        raise ValueError("triangulation required with coordinate input")
    if not j.is_real_positive:
        raise ValueError("j must have real positive coordinates")
    rho_src = rho if isinstance(rho, FramedRepresentation) else frames_from_fg(tri, rho)
    j_src = frames_from_fg(tri, j)
    curves = enumerate_simple(tri, max_weight)
    tasks = [(tri, rho_src, j_src, c.weights) for c in curves]
    if jobs > 1 and len(tasks) > 64:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            lengths = list(pool.map(_lengths_job, tasks, chunksize=32))
    else:
        lengths = [_lengths_job(t) for t in tasks]
    reports = []
    for c, (lr, lj) in zip(curves, lengths):
        if lj <= 1e-12:
            raise ZeroDenominator(f"curve {list(c.weights)} has zero j-length", weights=list(c.weights))
        reports.append(CurveReport(c.weights, lr, lj, lr / lj if lr > 0 else 0.0))
    audit = []
    for i in range(tri.punctures):
        l_rho = _rho_boundary(rho, tri, i)
        target = l_rho if targets is None else float(targets[i])
        audit.append(BoundaryEntry(i, target, boundary_invariant(tri, j, i)[0], l_rho))
    return assemble(reports, audit, max_weight, tolerance)


def strict_dominator_filling(rho_hat: FramedRepresentation, max_weight: int,
                             tolerance: float = AUDIT_TOL, jobs: int = 1):
    """Straighten a framed representation whose pleating locus fills.

    Returns ``(j0, certificate)``.
    """
    if detect_degeneracy(rho_hat).kind != "nondegenerate":
        raise DegenerateInput("representation is degenerate")
    tri = rho_hat.triangulation
    X = fg_from_framed(rho_hat)
    bend = bending_data(X, tri)
    if not bend.filling:
        raise NotFilling(
            "pleating locus does not fill; use strip deformations",
            support=sorted(bend.support),
        )
    j0 = straighten(X)
    return j0, dominate(X, j0, max_weight, tri, tolerance, jobs)


def trig_gap(L: float, alpha: float, theta: float) -> float:
    """Guaranteed shortening of a segment with arms >= L bent at one crossing."""
    if theta == 0:
        raise ZeroBend("no bending, no gap")
    if L <= 0 or not (0 < alpha <= math.pi / 2):
        raise ValueError("need L > 0 and alpha in (0, pi/2]")
    beta = bend_angle_beta(alpha, abs(theta))
    return 2 * L - bent_endpoint_distance(L, L, beta)


@dataclass(frozen=True)
class CrossingProfile:
    """Geometry of a closed geodesic of the straightened surface at bent edges."""

    segments: tuple  # lengths between consecutive bent crossings
    angles: tuple  # acute intersection angle at each bent crossing
    bends: tuple  # |bending angle| of the crossed edge

    @property
    def n(self) -> int:
        return len(self.angles)

    def bound(self) -> float:
        """``n * trig_gap(L, alpha, theta)`` with the worst parameters."""
        if not self.n:
            return 0.0
        half = min(self.segments) / 2
        return self.n * trig_gap(half, min(self.angles), min(self.bends))


def crossing_profile(tri: IdealTriangulation, coords: FGCoordinates, curve: NormalCurve,
                     angle_tol: float = 1e-9) -> CrossingProfile:
    bend = bending_data(coords, tri)
    j = straighten(coords)
    frames = frames_from_fg(tri, j)
    word = curve_word(tri, curve)
    hol = frames.holonomy(word.crossings())
    axis = tuple(fixed_points(hol))
    pts, angles, bends = [], [], []
    acc = MoebiusMap.identity()
    for t, s in word.crossings():
        e = tri.edge_of(t, s)
        if abs(bend.angle[e]) > angle_tol:
            p = frames.points[t]
            edge = (acc(p[s]), acc(p[(s + 1) % 3]))
            x, a = intersection(axis, edge)
            pts.append(x)
            angles.append(a)
            bends.append(abs(bend.angle[e]))
        acc = acc @ frames.crossing(t, s)
    if not pts:
        return CrossingProfile((), (), ())
    pts.append(hol(pts[0]))
    segs = tuple(point_distance(pts[i], pts[i + 1]) for i in range(len(pts) - 1))
    return CrossingProfile(segs, tuple(angles), tuple(bends))


def cusped_coordinates(tri: IdealTriangulation, seed=None) -> FGCoordinates:
    """Real positive coordinates with every puncture a cusp.

    Projects the log-coordinates ``seed`` (default zero) onto the solutions
    of the link-sum equations.
    """
    A = np.zeros((tri.punctures, tri.n_edges))
    for i in range(tri.punctures):
        for e in tri.link_edges(i):
            A[i, e] += 1
    x = np.zeros(tri.n_edges) if seed is None else np.asarray(seed, dtype=float)
    x = x - np.linalg.pinv(A) @ (A @ x)
    return FGCoordinates(tuple(complex(math.exp(v)) for v in x))


def degenerate_dominator_a(genus: int, punctures: int, max_weight: int,
                           rho: FramedRepresentation | None = None, seed=None,
                           tri: IdealTriangulation | None = None):
    """Cusped Fuchsian structure dominating a degenerate (a) representation.

    Without ``rho`` the numerator lengths are zero by hypothesis; with
    ``rho`` they are measured.
    """
    if rho is not None:
        tri = rho.triangulation
        if detect_degeneracy(rho).kind != "degenerate_a":
            raise DegenerateInput("representation is not degenerate of type (a)")
    if tri is None:
        tri = standard_triangulation(genus, punctures)
    j = cusped_coordinates(tri, seed)
    holonomy_from_fg(tri, j).validate()
    j_src = frames_from_fg(tri, j)
    reports = []
    for c in enumerate_simple(tri, max_weight):
        word = curve_word(tri, c)
        lj = translation_length(word_holonomy(j_src, tri, word))
        lr = 0.0 if rho is None else translation_length(word_holonomy(rho, tri, word))
        if lj <= 1e-12:
            raise ZeroDenominator(f"curve {list(c.weights)} has zero j-length")
        reports.append(CurveReport(c.weights, lr, lj, lr / lj if lr > 0 else 0.0))
    audit = []
    for i in range(tri.punctures):
        lr = 0.0 if rho is None else translation_length(rho.peripheral(i))
        audit.append(BoundaryEntry(i, 0.0, boundary_invariant(tri, j, i)[0], lr))
    return j, assemble(reports, audit, max_weight, notes={"case": "degenerate_a"})


def coaxial_stub(rho: FramedRepresentation, max_weight: int) -> DominationCertificate:
    """Certificate placeholder for co-axial input: character only, no construction."""
    deg = detect_degeneracy(rho)
    if deg.kind != "degenerate_coaxial":
        raise DegenerateInput("representation is not co-axial")
    chi = coaxial_character(rho, deg.axis)
    audit = tuple(
        BoundaryEntry(i, translation_length(rho.peripheral(i)), math.nan, translation_length(rho.peripheral(i)))
        for i in range(rho.triangulation.punctures)
    )
    return DominationCertificate((), math.nan, None, audit, max_weight, "unsupported_construction",
                                 {"case": "degenerate_coaxial", "character": chi})
