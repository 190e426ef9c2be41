import math
from math import gcd

import numpy as np
import pytest

from fgdom.errors import BudgetExceeded, DisconnectedCurve
from fgdom.curves import (
    boundary_margin,
    curve_holonomy,
    curve_word,
    enumerate_simple,
    reversed_word,
    word_holonomy,
)
from fgdom.hyperbolic import geodesic_distance
from fgdom.moebius import fixed_points, translation_length
from fgdom.representation import FGCoordinates, frames_from_fg
from fgdom.surface import NormalCurve, build_triangulation, flip, standard_triangulation, trace_normal_curve

from test_representation import random_coords

TORUS = standard_triangulation(1, 1)


def farey_oracle(w):
    """Weight vectors of slopes p/q on the punctured torus, max entry <= w."""
    out = set()
    for p in range(-w, w + 1):
        for q in range(0, w + 1):
            if gcd(p, q) != 1 or (q == 0 and p != 1):
                continue
            v = (abs(p), abs(q), abs(p + q))
            if max(v) <= w:
                out.add(v)
    return out


@pytest.mark.parametrize("w", range(1, 9))
def test_torus_counts_match_farey(w):
    got = [c.weights for c in enumerate_simple(TORUS, w)]
    assert len(got) == len(set(got))
    assert set(got) == farey_oracle(w)


def test_torus_small_counts():
    assert [len(enumerate_simple(TORUS, w)) for w in range(1, 7)] == [3, 6, 12, 18, 30, 36]


def test_empty_cases():
    assert enumerate_simple(standard_triangulation(0, 3), 8) == []
    assert enumerate_simple(TORUS, 0) == []
    with pytest.raises(BudgetExceeded):
        enumerate_simple(standard_triangulation(2, 1), 6, budget=1000)
    with pytest.raises(ValueError):
        enumerate_simple(TORUS, 65)


def test_order_graded_lex():
    cs = enumerate_simple(standard_triangulation(1, 2), 3)
    keys = [(c.total, c.weights) for c in cs]
    assert keys == sorted(keys)


@pytest.mark.parametrize("g,k,w", [(1, 2, 3), (2, 1, 2), (0, 4, 3)])
def test_enumerated_retrace(g, k, w):
    tri = standard_triangulation(g, k)
    cs = enumerate_simple(tri, w)
    assert cs
    for c in cs:
        word = curve_word(tri, c)
        counts = [0] * tri.n_edges
        for e, _ in word.tokens:
            counts[e] += 1
        assert tuple(counts) == c.weights


def test_modular_slope():
    # the (1,0) curve of the modular torus has trace 3
    h = curve_holonomy(TORUS, FGCoordinates((1, 1, 1)), NormalCurve((1, 1, 0)))
    assert abs(h.trace_sq - 9) < 1e-12
    assert translation_length(h) == pytest.approx(2 * math.acosh(1.5), abs=1e-12)


def test_disconnected():
    with pytest.raises(DisconnectedCurve):
        curve_holonomy(TORUS, FGCoordinates((1, 1, 1)), NormalCurve((2, 2, 0)))


def test_reversed_traversal(rng):
    x = random_coords(rng, 3)
    for c in enumerate_simple(TORUS, 4):
        word = curve_word(TORUS, c)
        a = word_holonomy(x, TORUS, word)
        b = word_holonomy(x, TORUS, reversed_word(TORUS, word))
        assert translation_length(a) == pytest.approx(translation_length(b), abs=1e-12)
        assert (a @ b).distance_from_identity() < 1e-9 or abs(a.trace_sq - b.trace_sq) < 1e-9


def test_starting_point(rng):
    tri = standard_triangulation(1, 2)
    x = random_coords(rng, tri.n_edges)
    frames = frames_from_fg(tri, x)
    for c in enumerate_simple(tri, 2):
        cr = curve_word(tri, c).crossings()
        ref = frames.holonomy(cr).trace_sq
        for k in range(1, len(cr)):
            assert abs(frames.holonomy(cr[k:] + cr[:k]).trace_sq - ref) < 1e-9 * max(1, abs(ref))


def _relabel(tri, tperm, eperm):
    rows = [None] * tri.n_edges
    for e, (t, s, u, r) in enumerate(tri.gluing):
        rows[eperm[e]] = (tperm[t], s, tperm[u], r)
    return build_triangulation(tri.genus, tri.punctures, rows)


def test_relabelling(rng):
    tri = standard_triangulation(1, 2)
    x = random_coords(rng, tri.n_edges)
    tperm = list(rng.permutation(tri.n_triangles))
    eperm = list(rng.permutation(tri.n_edges))
    tri2 = _relabel(tri, tperm, eperm)
    x2 = [0] * tri.n_edges
    for e in tri.edges:
        x2[eperm[e]] = x[e]
    for c in enumerate_simple(tri, 2):
        w2 = [0] * tri.n_edges
        for e in tri.edges:
            w2[eperm[e]] = c.weights[e]
        a = curve_holonomy(tri, x, c).trace_sq
        b = curve_holonomy(tri2, FGCoordinates(x2), NormalCurve(w2)).trace_sq
        assert abs(a - b) < 1e-10 * max(1, abs(a))


def _flip_oracle(tri, e, coords, weights):
    """Cluster mutation of positive coordinates and the normal-coordinate flip."""
    t, s, u, r = tri.gluing[e]
    pw, wq = tri.edge_of(u, (r + 1) % 3), tri.edge_of(u, (r + 2) % 3)
    qr, rp = tri.edge_of(t, (s + 1) % 3), tri.edge_of(t, (s + 2) % 3)
    X = coords[e]
    c = list(coords.values)
    for f in (pw, qr):
        c[f] *= 1 + X
    for f in (wq, rp):
        c[f] /= 1 + 1 / X
    c[e] = 1 / X
    w = list(weights)
    w[e] = max(weights[pw] + weights[qr], weights[wq] + weights[rp]) - weights[e]
    return FGCoordinates(tuple(c)), tuple(w)


@pytest.mark.parametrize("g,k", [(1, 1), (1, 2), (2, 1), (0, 4)])
def test_flip_equivariance(g, k, rng):
    tri = standard_triangulation(g, k)
    x = random_coords(rng, tri.n_edges, real=True)
    curves = enumerate_simple(tri, 2)
    for e in tri.edges:
        if tri.gluing[e][0] == tri.gluing[e][2]:
            continue
        tri2 = flip(tri, e)
        geometric = frames_from_fg(tri, x).flip(e).coordinates()
        for c in curves:
            x2, w2 = _flip_oracle(tri, e, x, c.weights)
            assert geometric.close_to(x2, 1e-9 * max(abs(v) for v in x2.values))
            before = translation_length(curve_holonomy(tri, x, c))
            after = translation_length(curve_holonomy(tri2, x2, NormalCurve(w2)))
            assert after == pytest.approx(before, abs=1e-9)


def test_margin_modular():
    # axis of [[2,1],[1,1]] peaks at sqrt(5)/2; the cusp at infinity has
    # stabiliser z -> z + 6, so the length-one horoball starts at height 6
    m = boundary_margin(TORUS, FGCoordinates((1, 1, 1)), NormalCurve((1, 1, 0)))
    assert m == pytest.approx(math.log(12 / math.sqrt(5)), abs=1e-12)
    assert m == pytest.approx(1.68018769357095, abs=1e-12)


def test_margin_self_floor():
    h = curve_holonomy(TORUS, FGCoordinates((1, 1, 1)), NormalCurve((1, 1, 0)))
    axis = tuple(fixed_points(h))
    assert geodesic_distance(axis, axis) == 0.0


def test_margin_family_bounded_below():
    x = FGCoordinates((1.4, 0.9, 1.2))
    margins = [boundary_margin(TORUS, x, c) for c in enumerate_simple(TORUS, 8)]
    assert min(margins) > 0.5


def test_margin_funnel_case(rng):
    tri = standard_triangulation(1, 2)
    x = FGCoordinates(tuple(np.exp(rng.uniform(0.2, 0.8, tri.n_edges))))
    for c in enumerate_simple(tri, 2):
        assert boundary_margin(tri, x, c) > 0
    with pytest.raises(ValueError):
        boundary_margin(TORUS, FGCoordinates((1j, 1, 1)), NormalCurve((1, 1, 0)))


def test_multicurve_components():
    assert len(trace_normal_curve(TORUS, NormalCurve((2, 2, 0)))) == 2
