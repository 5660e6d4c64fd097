import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circulant_total.colouring import (
    ColouringFormatError,
    TotalColouring,
    chord_colour_count,
    class_gap_multiset,
    colour_class_sizes,
    cyclic_gaps,
    parity_condition,
    parse,
    verify,
)
from circulant_total.constructive import TYPE_II_ORDERS, construct
from circulant_total.graph import Edge1, Edge3, Vertex, build
from oracles import naive_conflicts

C11 = ("25354543431", "12121212123", "43435354545")
C22 = ("2545353434545353124341", "1212121212121212312124", "3434545353434545453535")


def c11():
    return TotalColouring.from_words(*C11, k=5)


def c22():
    return TotalColouring.from_words(*C22, k=5)


def constant(n, colour=1, k=5):
    return TotalColouring(n, k, (colour,) * n, (colour,) * n, (colour,) * n)


def test_type_rejects_bad_lengths_and_colours():
    with pytest.raises(ColouringFormatError):
        TotalColouring(3, 5, (1, 2), (1, 2, 3), (1, 2, 3))
    with pytest.raises(ColouringFormatError):
        TotalColouring(2, 5, (1, 6), (1, 2), (1, 2))
    with pytest.raises(ColouringFormatError):
        TotalColouring(2, 5, (0, 1), (1, 2), (1, 2))


def test_paper_c11_is_proper():
    assert verify(build(11), c11()).ok


def test_forced_vertex_clash():
    c = c11()
    vertex = list(c.vertex)
    vertex[0] = vertex[1]
    bad = TotalColouring(11, 5, vertex, c.e1, c.e3)
    report = verify(build(11), bad)
    assert (Vertex(0), Vertex(1)) in report.conflicts


def test_all_one_colour_reports_every_pair():
    report = verify(build(9), constant(9))
    # 27 elements of degree 8 in the total graph
    assert len(report) == 27 * 8 // 2
    assert report.conflicts == tuple(sorted(report.conflicts))
    assert (Vertex(0), Edge1(0)) in report.conflicts
    assert (Edge1(0), Edge3(0)) in report.conflicts


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        verify(build(9), c11())


def test_report_text():
    assert str(verify(build(11), c11())) == "OK"
    bad = constant(9)
    assert str(verify(build(9), bad)).splitlines()[0] == "conflict VERTEX[0] VERTEX[1]"


def test_class_sizes():
    assert colour_class_sizes(c11()) == (1, 1, 3, 3, 3)
    assert colour_class_sizes(c22()) == (2, 2, 6, 6, 6)
    assert colour_class_sizes(constant(9, 2)) == (0, 9, 0, 0, 0)


def test_parity():
    assert parity_condition(c11())
    assert parity_condition(c22())
    c = c22()
    vertex = list(c.vertex)
    # one class of size 3 in n = 22
    vertex[vertex.index(3)] = 1
    assert not parity_condition(TotalColouring(22, 5, vertex, c.e1, c.e3))


def with_class(n, members, j=1, other=2):
    vertex = tuple(j if i in members else other for i in range(n))
    return TotalColouring(n, 5, vertex, (3,) * n, (4,) * n)


def test_gap_multisets():
    assert class_gap_multiset(with_class(13, {0, 2, 4}), 1) == (2, 2, 9)
    assert class_gap_multiset(with_class(13, {0}), 1) == (13,)
    gaps = class_gap_multiset(with_class(17, {0, 2, 4, 6, 8}), 1)
    assert gaps == (2, 2, 2, 2, 9)
    assert sum(gaps) == 17
    with pytest.raises(ValueError):
        class_gap_multiset(with_class(13, {0}), 5)


def test_cyclic_gaps_in_index_order():
    assert cyclic_gaps([9, 0, 2], 13) == (2, 7, 4)


def test_chord_counts():
    assert chord_colour_count(c11(), 3) == 3
    assert chord_colour_count(constant(9), 1) == 9
    assert chord_colour_count(c22(), 1) == 0


def test_compact_round_trip():
    c = c11()
    assert c.to_compact() == "\n".join(C11) + "\n"
    assert parse(c.to_compact()) == c


def test_record_round_trip():
    c = c22()
    rec = c.to_record()
    assert list(rec) == ["n", "k", "vertex_colours", "e1_colours", "e3_colours"]
    assert parse(c.to_json()) == c


@pytest.mark.parametrize("text", ["", "123\n123\n", "12a\n123\n123\n", '{"n": 3}', "{not json"])
def test_parse_errors(text):
    with pytest.raises(ColouringFormatError):
        parse(text)


def test_parse_k_override():
    assert parse("1232314\n3451232\n4666551\n").k == 6
    assert parse("\n".join(C11), k=6).k == 6


def type1_orders():
    return st.integers(min_value=7, max_value=60).filter(lambda n: n not in TYPE_II_ORDERS)


@settings(max_examples=40, deadline=None)
@given(type1_orders(), st.integers(min_value=0, max_value=59))
def test_rotation_closure(n, r):
    c = construct(n)
    assert verify(build(n), c.rotated(r)).ok


@settings(max_examples=40, deadline=None)
@given(type1_orders(), st.permutations([1, 2, 3, 4, 5]))
def test_colour_permutation_closure(n, perm):
    g = build(n)
    c = construct(n)
    d = c.recoloured(perm)
    assert verify(g, d).ok
    sizes = colour_class_sizes(c)
    assert colour_class_sizes(d) == tuple(sizes[perm.index(j)] for j in range(1, 6))
    bad = TotalColouring(n, 5, (1,) + c.vertex[1:], c.e1, c.e3)
    assert bool(verify(g, bad)) == bool(verify(g, bad.recoloured(perm)))


@settings(max_examples=40, deadline=None)
@given(type1_orders())
def test_proper_five_colouring_has_full_palette_at_each_vertex(n):
    g = build(n)
    c = construct(n)
    flat = c.flat
    for star in g.stars:
        assert sorted(flat[x] for x in star) == [1, 2, 3, 4, 5]


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=7, max_value=12), st.integers(min_value=2, max_value=6), st.randoms())
def test_verify_matches_naive_oracle(n, k, rnd):
    words = [tuple(rnd.randint(1, k) for _ in range(n)) for _ in range(3)]
    c = TotalColouring(n, k, *words)
    expected = naive_conflicts(n, *words)
    got = [((a.kind, a.index), (b.kind, b.index)) for a, b in verify(build(n), c)]
    assert got == expected


def test_gap_sums_on_random_valid_colourings():
    rnd = random.Random(20261016)
    orders = [n for n in range(7, 80) if n not in TYPE_II_ORDERS]
    for _ in range(100):
        n = rnd.choice(orders)
        perm = rnd.sample(range(1, 6), 5)
        c = construct(n).rotated(rnd.randrange(n)).recoloured(perm)
        assert verify(build(n), c).ok
        for j in set(c.vertex):
            assert sum(class_gap_multiset(c, j)) == n
