import pytest
from conftest import ALL, fixture
from hypothesis import given
from hypothesis import strategies as st
from oracles import brute_admissible, leibniz_det

from arcjones.arcgraph import (
    AdmissibleSubgraph,
    build_arc_graph,
    cable_graph,
    det,
    enumerate_admissible,
    is_admissible,
    subgraph_delta,
    weight_matrix,
)
from arcjones.poly import LaurentPoly, render, t_pow

# the figure-8 transition matrix, written out in canonical text form
FIG8_FULL = [
    ["0", "t", "0", "1 - t"],
    ["-t^-1 + 1", "0", "t^-1", "0"],
    ["0", "1 - t", "0", "t"],
    ["t^-1", "0", "-t^-1 + 1", "0"],
]


def test_fig8_full_matrix():
    g = build_arc_graph(fixture("fig8"), full=True)
    assert [[render(x) for x in row] for row in weight_matrix(g)] == FIG8_FULL


def test_fig8_long_matrix():
    g = build_arc_graph(fixture("fig8"))
    assert [[render(x) for x in row] for row in weight_matrix(g)] == [row[:3] for row in FIG8_FULL[:3]]


def test_unknot_graph_empty():
    g = build_arc_graph(fixture("unknot0"))
    assert g.vertices == [] and g.edges == []


def test_edge_colours_fig8():
    g = build_arc_graph(fixture("fig8"))
    kinds = sorted((e.src[0], e.dst[0], e.color) for e in g.edges)
    assert kinds == [(0, 1, "blue"), (1, 0, "red"), (1, 2, "blue"), (2, 1, "red")]


@pytest.mark.parametrize("name", ALL)
def test_cable_n1_is_identity(name):
    g = build_arc_graph(fixture(name))
    h = cable_graph(g, 1)
    assert [(e.src, e.dst, e.blue, e.weight) for e in h.edges] == [(e.src, e.dst, e.blue, e.weight) for e in g.edges]


def test_cable_n2_weights():
    g = build_arc_graph(fixture("fig8"))
    h = cable_graph(g, 2)
    T = t_pow(1)
    neg = [v for v in range(g.r) if g.sign[v] < 0 and g.over[v] < g.r][0]
    red = [e for e in h.edges if not e.blue and e.src[0] == neg and e.dst[1] == 1]
    assert red and all(e.weight == T * (1 - T) for e in red)
    pos = [v for v in range(g.r - 1) if g.sign[v] > 0][0]
    blue = [e for e in h.edges if e.blue and e.src[0] == pos]
    assert blue and all(e.weight == t_pow(-2) for e in blue)


def test_fig8_admissible():
    g = build_arc_graph(fixture("fig8"))
    subs = {frozenset((e.src[0], e.dst[0]) for e in s.edges) for s in enumerate_admissible(g)}
    assert subs == {frozenset(), frozenset({(0, 1), (1, 0)}), frozenset({(1, 2), (2, 1)})}


def test_single_vertex():
    g = build_arc_graph(fixture("trefoil_right"))
    assert len(g.vertices) == 2
    g1 = cable_graph(g, 1)
    g1.edges = []
    g1._index()
    assert [s.edges for s in enumerate_admissible(g1)] == [frozenset()]


@pytest.mark.parametrize("name", ALL)
def test_admissible_matches_brute_force(name):
    g = build_arc_graph(fixture(name))
    if len(g.edges) > 14:
        pytest.skip("edge set too large for the subset oracle")
    got = [s.edges for s in enumerate_admissible(g)]
    assert len(got) == len(set(got))
    assert set(got) == set(brute_admissible(g.edges))
    assert all(is_admissible(s) for s in got)


@pytest.mark.parametrize("name", ["trefoil_right", "fig8"])
def test_cabled_admissible_matches_brute_force(name):
    h = cable_graph(build_arc_graph(fixture(name)), 2)
    got = {s.edges for s in enumerate_admissible(h)}
    assert got == set(brute_admissible(h.edges))


def test_empty_delta():
    g = build_arc_graph(fixture("fig8"))
    assert subgraph_delta(g, AdmissibleSubgraph(frozenset())) == (0, 0, 0)


entries = st.dictionaries(st.integers(-3, 3), st.integers(-3, 3), max_size=3).map(LaurentPoly)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(m):
    assert det(m) == leibniz_det(m)
