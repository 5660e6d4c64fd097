import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circulant_total.graph import (
    Edge1,
    Edge3,
    Element,
    InvalidGraphError,
    Kind,
    Vertex,
    build,
    independence_number,
    is_complete_bipartite_4_4,
)
from oracles import brute_independence, clash


def test_build_smallest():
    g = build(7)
    assert g.n == 7
    assert len(g.edges()) == 14
    assert len(set(map(frozenset, g.edges()))) == 14


@pytest.mark.parametrize("n,d1,d2", [(6, 1, 3), (7, 3, 3), (7, 0, 3), (9, 1, 5)])
def test_build_rejects_bad_offsets(n, d1, d2):
    with pytest.raises(InvalidGraphError):
        build(n, d1, d2)


def test_element_count():
    g = build(13)
    assert g.element_count == 39
    assert len(list(g.elements())) == 39


def test_vertex_neighbourhood_n9():
    g = build(9)
    assert g.adjacent_elements(Vertex(0)) == {
        Vertex(1), Vertex(8), Vertex(3), Vertex(6), Edge1(0), Edge1(8), Edge3(0), Edge3(6),
    }


def test_edge_neighbourhood_n9():
    adj = build(9).adjacent_elements(Edge1(0))
    assert Vertex(0) in adj and Vertex(1) in adj
    assert sum(e.kind is not Kind.VERTEX for e in adj) == 6


def test_chord_excludes_itself():
    g = build(7)
    assert g.endpoints(Edge3(0)) == (0, 3)
    assert Edge3(0) not in g.adjacent_elements(Edge3(0))


def test_general_offsets():
    g = build(11, 2, 5)
    assert g.endpoints(Element(Kind.EDGE3, 8)) == (8, 2)
    assert all(len(g.adjacent_elements(e)) == 8 for e in g.elements())


def test_dot_export():
    dot = build(7).to_dot()
    assert dot.startswith('graph "C7(1,3)" {')
    assert "  v0 -- v1;" in dot and "  v6 -- v2;" in dot
    assert dot.count(" -- ") == 14


orders = st.integers(min_value=7, max_value=40)


@settings(max_examples=40, deadline=None)
@given(orders)
def test_every_element_sees_eight(n):
    g = build(n)
    for v in range(n):
        adj = g.adjacent_elements(Vertex(v))
        assert len(adj) == 8
        assert sum(e.kind is not Kind.VERTEX for e in adj) == 4
    for e in g.elements():
        assert len(g.adjacent_elements(e)) == 8


@settings(max_examples=30, deadline=None)
@given(orders)
def test_adjacency_symmetric_and_matches_oracle(n):
    g = build(n)
    for a in g.elements():
        adj = g.adjacent_elements(a)
        for b in g.elements():
            assert (b in adj) == clash(n, tuple(a), tuple(b))
            if b in adj:
                assert a in g.adjacent_elements(b)


@settings(max_examples=30, deadline=None)
@given(orders, st.integers(min_value=1, max_value=39))
def test_rotation_is_automorphism(n, r):
    g = build(n)

    def shift(e):
        return Element(e.kind, (e.index + r) % n)

    for a in g.elements():
        assert {shift(b) for b in g.adjacent_elements(a)} == g.adjacent_elements(shift(a))


def test_conflict_table_matches_element_view():
    g = build(10)
    for i, row in enumerate(g.conflict_table):
        assert set(row) == {g.element_id(x) for x in g.adjacent_elements(g.element_at(i))}


@pytest.mark.parametrize("n,expected", [(7, 2), (13, 5), (17, 7)])
def test_independence_paper_values(n, expected):
    assert independence_number(build(n)) == expected


def test_independence_n8_brute_force():
    assert brute_independence(8) == 4
    assert independence_number(build(8)) == 4


@pytest.mark.parametrize("n", range(7, 17))
def test_independence_against_all_subsets(n):
    assert independence_number(build(n)) == brute_independence(n)


def test_independence_guard():
    with pytest.raises(InvalidGraphError):
        independence_number(build(65))


def test_k44():
    assert is_complete_bipartite_4_4(build(8))
    for n in (7, 10, 11):
        assert not is_complete_bipartite_4_4(build(n))
