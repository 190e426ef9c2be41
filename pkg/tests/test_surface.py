import pytest
from hypothesis import given, settings, strategies as st

from fgdom.errors import InadmissibleWeights, NonNegativeEuler, SelfGluedEdge, UnpairedSide, WrongPunctureCount
from fgdom.surface import (
    NormalCurve,
    build_triangulation,
    canonical_form,
    flip,
    is_admissible,
    is_peripheral,
    standard_triangulation,
    trace_normal_curve,
)

SURFACES = [(1, 1), (0, 3), (1, 2), (2, 1), (0, 4), (1, 3), (2, 2)]
TORUS = [(0, 0, 1, 1), (0, 1, 1, 2), (0, 2, 1, 0)]
PANTS = [(0, 0, 1, 0), (0, 1, 1, 2), (0, 2, 1, 1)]
FOLDED_PANTS = [(0, 0, 0, 2), (0, 1, 1, 0), (1, 1, 1, 2)]


def oracle_components(tri, weights):
    """Independent count of normal loops: join arc endpoints with union-find.

    A point on edge e is labelled by its position counted from the start of
    the first side listed for e.
    """
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def label(t, s, p_from_start):
        e = tri.edge_of(t, s)
        t0, s0, _, _ = tri.gluing[e]
        w = weights[e]
        return (e, p_from_start if (t0, s0) == (t, s) else w - 1 - p_from_start)

    for t in range(tri.n_triangles):
        w = [weights[tri.edge_of(t, s)] for s in range(3)]
        n = [(w[(v - 1) % 3] + w[v] - w[(v + 1) % 3]) // 2 for v in range(3)]
        for v in range(3):
            for k in range(n[v]):
                # side v starts at corner v; side v-1 ends there
                a = label(t, v, k)
                b = label(t, (v - 1) % 3, w[(v - 1) % 3] - 1 - k)
                parent[find(a)] = find(b)
    comps = {}
    for e, w in enumerate(weights):
        for p in range(w):
            comps.setdefault(find((e, p)), [0] * len(weights))[e] += 1
    return sorted(tuple(c) for c in comps.values())


@pytest.mark.parametrize("g,k", SURFACES)
def test_standard_counts(g, k):
    tri = standard_triangulation(g, k)
    assert tri.n_triangles == 4 * g - 4 + 2 * k
    assert tri.n_edges == 6 * g - 6 + 3 * k
    assert 3 * tri.n_triangles == 2 * tri.n_edges
    assert len(tri.links) == k
    corners = [c for link in tri.links for c in link]
    assert sorted(corners) == [(t, v) for t in range(tri.n_triangles) for v in range(3)]


def test_torus_example():
    tri = build_triangulation(1, 1, TORUS)
    assert (tri.n_triangles, tri.n_edges) == (2, 3)
    assert [len(c) for c in tri.links] == [6]


def test_pants_example():
    tri = build_triangulation(0, 3, PANTS)
    assert (tri.n_triangles, tri.n_edges) == (2, 3)
    assert sorted(len(c) for c in tri.links) == [2, 2, 2]


def test_build_errors():
    with pytest.raises(NonNegativeEuler):
        build_triangulation(0, 1, [])
    with pytest.raises(NonNegativeEuler):
        build_triangulation(0, 2, [])
    with pytest.raises(UnpairedSide):
        build_triangulation(1, 1, TORUS[:2])
    with pytest.raises(UnpairedSide):
        build_triangulation(1, 1, [(0, 0, 1, 1), (0, 0, 1, 2), (0, 2, 1, 0)])
    with pytest.raises(WrongPunctureCount):
        build_triangulation(0, 3, TORUS)


@pytest.mark.parametrize("g,k", SURFACES)
def test_flip_involution(g, k):
    tri = standard_triangulation(g, k)
    for e in tri.edges:
        t, _, u, _ = tri.gluing[e]
        if t == u:
            continue
        f = flip(tri, e)
        assert (f.n_triangles, f.n_edges, len(f.links)) == (tri.n_triangles, tri.n_edges, k)
        assert canonical_form(flip(f, e)) == canonical_form(tri)


def test_torus_flips_same_type():
    # all flips of the torus triangulation give the same combinatorial type
    tri = standard_triangulation(1, 1)
    assert all(canonical_form(flip(tri, e)) == canonical_form(tri) for e in tri.edges)


def test_self_glued_flip():
    tri = build_triangulation(0, 3, FOLDED_PANTS)
    with pytest.raises(SelfGluedEdge):
        flip(tri, 0)


def test_trace_example():
    tri = standard_triangulation(1, 1)
    comps = trace_normal_curve(tri, NormalCurve((1, 1, 0)))
    assert len(comps) == 1
    assert sorted(e for e, _ in comps[0].tokens) == [0, 1]
    assert oracle_components(tri, (1, 1, 0)) == [(1, 1, 0)]
    assert not is_peripheral(tri, comps[0])
    assert trace_normal_curve(tri, NormalCurve((0, 0, 0))) == []
    with pytest.raises(InadmissibleWeights):
        trace_normal_curve(tri, NormalCurve((1, 0, 0)))


def test_tokens_are_turns():
    tri = standard_triangulation(1, 2)
    for comp in trace_normal_curve(tri, NormalCurve(tri.link_weights(0))):
        assert all(turn in ("left", "right") for _, turn in comp.tokens)


def _admissible_vectors(tri, bound):
    import itertools
    return [w for w in itertools.product(range(bound + 1), repeat=tri.n_edges) if any(w) and is_admissible(tri, w)]


@pytest.mark.parametrize("g,k,bound", [(1, 1, 6), (0, 3, 4), (1, 2, 2), (0, 4, 2)])
def test_trace_matches_oracle(g, k, bound):
    tri = standard_triangulation(g, k)
    for w in _admissible_vectors(tri, bound):
        comps = trace_normal_curve(tri, NormalCurve(w))
        mine = []
        for c in comps:
            v = [0] * tri.n_edges
            for e, _ in c.tokens:
                v[e] += 1
            mine.append(tuple(v))
        assert sorted(mine) == oracle_components(tri, w)
        total = [sum(col) for col in zip(*mine)]
        assert tuple(total) == tuple(w)


@pytest.mark.parametrize("g,k", SURFACES)
def test_links_are_peripheral(g, k):
    tri = standard_triangulation(g, k)
    for i in range(k):
        comps = trace_normal_curve(tri, NormalCurve(tri.link_weights(i)))
        assert len(comps) == 1 and is_peripheral(tri, comps[0])


def test_pants_link_example():
    tri = build_triangulation(0, 3, PANTS)
    for i in range(3):
        comps = trace_normal_curve(tri, NormalCurve(tri.link_weights(i)))
        assert is_peripheral(tri, comps[0])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_admissibility_closed_under_addition(data):
    tri = standard_triangulation(1, 2)
    pool = _POOL
    a = data.draw(st.sampled_from(pool))
    b = data.draw(st.sampled_from(pool))
    assert is_admissible(tri, (NormalCurve(a) + NormalCurve(b)).weights)


_POOL = _admissible_vectors(standard_triangulation(1, 2), 2)
