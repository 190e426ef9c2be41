"""Acceptance suite: one block per criterion, summarised at the end of the run."""
import cmath
import math
import subprocess
import sys

import numpy as np
import pytest

from fgdom.curves import enumerate_simple
from fgdom.domination import crossing_profile, degenerate_dominator_a, dominate
from fgdom.moebius import IsometryClass, MoebiusMap, classify, translation_length
from fgdom.pleat import straighten
from fgdom.representation import (
    FGCoordinates,
    FramedRepresentation,
    axis_action,
    boundary_log_sum,
    detect_degeneracy,
    fg_from_framed,
    holonomy_from_fg,
    presentation,
    word_character,
)
from fgdom.strip import realize_arc, strip_deform, verify_strict_increase
from fgdom.surface import NormalCurve, standard_triangulation

from conftest import random_map
from test_cli import write_inputs
from test_curves import farey_oracle
from test_representation import SURFACES, _random_coaxial, _words, random_coords

TORUS = standard_triangulation(1, 1)
SEED = 1729


def acceptance(n, title):
    return pytest.mark.acceptance(n, title)


@acceptance(1, "trace-length identity")
def test_trace_length_identity(record_property):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for k in range(1000):
        if k % 2:
            # real SL(2,R) matrices with |tr| > 2
            while True:
                m = rng.normal(size=(2, 2))
                d = np.linalg.det(m)
                if d > 1e-2:
                    g = MoebiusMap.from_array(m / math.sqrt(d))
                    if abs(g.trace.real) > 2.05:
                        break
        else:
            # conjugates of a real diagonal map, either sign
            lam = math.exp(rng.uniform(0.02, 3.0)) * rng.choice([-1.0, 1.0])
            g = MoebiusMap(lam, 0, 0, 1 / lam).conj(random_map(rng))
        assert classify(g) is IsometryClass.LOXODROMIC
        l = translation_length(g)
        gap = abs(g.trace_sq - 4 * math.cosh(l / 2) ** 2)
        worst = max(worst, gap)
        assert gap <= 1e-10
    record_property("detail", f"max residual {worst:.1e}")


@acceptance(2, "FG round trip")
@pytest.mark.parametrize("g,k", SURFACES)
def test_round_trip(g, k, record_property):
    rng = np.random.default_rng(SEED + 10 * g + k)
    tri = standard_triangulation(g, k)
    worst = 0.0
    for _ in range(100):
        x = random_coords(rng, tri.n_edges)
        y = fg_from_framed(holonomy_from_fg(tri, x))
        err = max(abs(a - b) / max(1.0, abs(a)) for a, b in zip(x.values, y.values))
        worst = max(worst, err)
        assert err <= 1e-8
    record_property("detail", f"S{g}{k} {worst:.1e}")


@acceptance(3, "boundary preserved by straightening")
@pytest.mark.parametrize("g,k", SURFACES)
def test_straightening_boundary(g, k, record_property):
    rng = np.random.default_rng(SEED + 100 * g + k)
    tri = standard_triangulation(g, k)
    worst = 0.0
    for _ in range(25):
        x = random_coords(rng, tri.n_edges)
        j = straighten(x)
        rho, j_rep = holonomy_from_fg(tri, x), holonomy_from_fg(tri, j)
        for i in range(k):
            s = boundary_log_sum(tri, x, i)
            assert boundary_log_sum(tri, j, i) == s
            lj = translation_length(j_rep.peripheral(i))
            err = max(abs(lj - abs(s)), abs(lj - translation_length(rho.peripheral(i))))
            worst = max(worst, err)
            assert err <= 1e-8
    record_property("detail", f"S{g}{k} {worst:.1e}")


def bent_samples():
    rng = np.random.default_rng(SEED)
    out = []
    for _ in range(20):
        mod = np.exp(rng.uniform(-1.0, 1.0, 3))
        ang = rng.uniform(0.2, math.pi - 0.2, 3) * rng.choice([-1.0, 1.0], 3)
        out.append(FGCoordinates(tuple(mod * np.exp(1j * ang))))
    return out


BENT = bent_samples()


@pytest.fixture(scope="module")
def bent_certificates():
    return [dominate(x, straighten(x), 12, TORUS) for x in BENT]


@acceptance(4, "filling case strictly dominated")
def test_filling_strict(bent_certificates, record_property):
    sups = []
    for cert in bent_certificates:
        assert cert.verdict == "strict"
        assert cert.sup_ratio < 1 - 1e-3
        for b in cert.boundary_audit:
            assert b.l_rho == b.l_j == b.target
        sups.append(cert.sup_ratio)
    record_property("detail", f"20 samples, worst sup {max(sups):.4f}")


@acceptance(5, "trig gap below measured deficits")
def test_trig_gap(bent_certificates, record_property):
    slack = math.inf
    for x, cert in zip(BENT, bent_certificates):
        for r in cert.reports:
            prof = crossing_profile(TORUS, x, NormalCurve(r.weights))
            assert prof.n == sum(r.weights)
            margin = (r.l_j - r.l_rho) - prof.bound()
            slack = min(slack, margin)
            assert margin >= -1e-6
    record_property("detail", f"min slack {slack:.2e}")


J = FGCoordinates((math.exp(0.5), math.exp(0.2), math.exp(0.3)))
FILLING_ARCS = [(2,), (2, 1, 2)]


@acceptance(6, "strip deformation lengthens")
@pytest.mark.parametrize("t", [0.1, 0.3, 0.6])
def test_strip_lengthening(t, record_property):
    arcs = [realize_arc(J, p, TORUS) for p in FILLING_ARCS]
    jt = strip_deform(J, arcs, [t, t], TORUS)
    cert = verify_strict_increase(J, jt, 12)
    assert TORUS.link_weights(0) in [r.weights for r in cert.reports]
    assert all(r.ratio < 1 for r in cert.reports)
    assert cert.sup_ratio < 1 and cert.verdict == "strict"
    record_property("detail", f"t={t} sup {cert.sup_ratio:.4f}")


@acceptance(6, "strip deformation lengthens")
def test_strip_zero_width():
    arcs = [realize_arc(J, p, TORUS) for p in FILLING_ARCS]
    jt = strip_deform(J, arcs, [0.0, 0.0], TORUS)
    base = holonomy_from_fg(TORUS, J)
    assert jt.generators == base.generators


def upper_rep(rng, tri):
    pres = presentation(tri)
    gens = {}
    for name in pres.generators[:-1]:
        a = cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        gens[name] = MoebiusMap(a, complex(*rng.normal(size=2)), 0, 1 / a)
    gens[pres.last] = MoebiusMap.identity()
    gens[pres.last] = FramedRepresentation(tri, gens).evaluate(pres.relation[1:])
    return FramedRepresentation(tri, gens)


@acceptance(7, "degenerate (a) gives zero")
@pytest.mark.parametrize("g,k,w", [(1, 1, 10), (2, 1, 3)])
def test_degenerate_a(g, k, w, record_property):
    rng = np.random.default_rng(SEED + g)
    tri = standard_triangulation(g, k)
    for _ in range(5):
        rho = upper_rep(rng, tri)
        assert detect_degeneracy(rho).kind == "degenerate_a"
        _, cert = degenerate_dominator_a(g, k, w, rho=rho)
        assert cert.sup_ratio == 0.0 and cert.verdict == "strict"
    record_property("detail", f"S{g}{k} exact zero")


@acceptance(8, "co-axial character")
def test_coaxial(record_property):
    rng = np.random.default_rng(SEED)
    words = _words(["x1", "x2", "c0"], 4)
    worst = 0.0
    for _ in range(50):
        rho, _ = _random_coaxial(rng)
        d = detect_degeneracy(rho)
        assert d.kind == "degenerate_coaxial"
        for w in words:
            g = rho.evaluate(w)
            eps, m = axis_action(g, d.axis)
            err = abs(word_character(rho, d.axis, w) - m)
            if eps == 1:
                err = max(err, abs(abs(m) - translation_length(g)))
            else:
                # a swap of the axis ends is a half turn
                err = max(err, translation_length(g))
            worst = max(worst, err)
            assert err <= 1e-8
    record_property("detail", f"{len(words)} words x 50, max error {worst:.1e}")


@acceptance(9, "curve enumeration oracle")
@pytest.mark.parametrize("w", range(1, 9))
def test_farey(w):
    got = [c.weights for c in enumerate_simple(TORUS, w)]
    assert len(got) == len(set(got))
    assert set(got) == farey_oracle(w)


@acceptance(9, "curve enumeration oracle")
def test_pants_empty():
    assert list(enumerate_simple(standard_triangulation(0, 3), 12)) == []


COMMANDS = [
    ["triangulate", "--genus", "2", "--flip", "3"],
    ["coords", "--genus", "1", "--punctures", "2", "--random", "--seed", "11"],
    ["coords", "--rep", "{rep}"],
    ["straighten", "--coords", "{x}"],
    ["dominate", "--rep", "{rep}", "--max-weight", "12", "--jobs", "2"],
    ["spectrum", "--coords", "{x}", "--j", "{j}", "--max-weight", "6"],
    ["strip", "--coords", "{j}", "--genus", "1", "--arcs", "{arcs}", "--max-weight", "6"],
    ["classify", "--rep", "{rep}"],
    ["develop", "--coords", "{x}", "--path", "0,1,2", "--svg", "{out}.svg"],
]


@acceptance(10, "byte-identical CLI output")
@pytest.mark.parametrize("argv", COMMANDS, ids=[c[0] for c in COMMANDS])
def test_determinism(argv, tmp_path):
    paths = write_inputs(tmp_path)
    runs = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        args = [a.format(out=out, **paths) for a in argv]
        res = subprocess.run([sys.executable, "-m", "fgdom.cli", *args, "--out", f"{out}.json"],
                             capture_output=True, check=False)
        blobs = [res.returncode, res.stdout, res.stderr]
        for ext in (".json", ".csv", ".png", ".svg"):
            p = tmp_path / f"run{k}{ext}"
            blobs.append(p.read_bytes() if p.exists() else None)
        runs.append(blobs)
    assert runs[0][0] in (0, 2)
    assert runs[0] == runs[1]
