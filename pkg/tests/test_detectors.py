from __future__ import annotations

import itertools
import random

import oracles
import pytest
from helpers import detector_disagreements, to_graph
from hypothesis import given, settings
from hypothesis import strategies as st

from fanramsey import (
    BLUE,
    RED,
    Clique,
    ColoredGraph,
    Fan,
    Matching,
    StarColoredGraph,
    TargetPair,
    Witness,
    build_g1,
    clique_number,
    find_clique,
    find_fan,
    find_matching,
    is_bipartite,
    is_free,
    shortest_odd_cycle,
)
from fanramsey.detectors import clique_partitions, iter_cliques, matching_number, max_matching


@st.composite
def color_maps(draw, max_order=9):
    n = draw(st.integers(1, max_order))
    p = draw(st.sampled_from([0.15, 0.5, 0.85]))
    seed = draw(st.integers(0, 2**32 - 1))
    return n, oracles.random_coloring(n, random.Random(seed), p)


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_exhaustive_small(order):
    assert [d for c in oracles.all_colorings(order) for d in detector_disagreements(order, c)] == []


@settings(max_examples=150, deadline=None)
@given(color_maps())
def test_agrees_with_oracles(case):
    order, colors = case
    assert detector_disagreements(order, colors) == []


@settings(max_examples=100, deadline=None)
@given(color_maps(max_order=10))
def test_clique_search_helpers(case):
    order, colors = case
    g = to_graph(order, colors)
    edges = oracles.edge_set(colors, "R")
    adj = g.adjacency(RED)
    assert clique_number(g, RED) == oracles.clique_number(order, edges)
    for r in (2, 3):
        expected = list(oracles.cliques(order, edges, r))
        assert [tuple(c) for c in iter_cliques(adj, (1 << order) - 1, r)] == expected


def test_clique_partitions_counts():
    k6 = ColoredGraph.monochromatic(6, RED).adjacency(RED)
    parts = list(clique_partitions(k6, 2))
    assert len(parts) == 15  # perfect matchings of K6
    assert len({tuple(map(tuple, p)) for p in parts}) == 15
    assert list(clique_partitions(build_g1(2).adjacency(RED), 4)) == [[[0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10, 11]]]
    assert list(clique_partitions(k6, 4)) == []


@pytest.mark.parametrize(
    "order, edges, expected",
    [
        # C5 with a pendant: perfect
        (6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)], 3),
        # three pendants on a C5 leave five odd pieces after removing three vertices
        (8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (2, 6), (3, 7)], 3),
        # two triangles joined through a path: augmenting path passes a blossom
        (8, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4), (6, 7)], 4),
    ],
)
def test_matching_with_blossoms(order, edges, expected):
    adj = ColoredGraph.from_red_edges(order, edges).adjacency(RED)
    es = {frozenset(e) for e in edges}
    assert oracles.matching_number(tuple(range(order)), es) == expected
    m = max_matching(adj)
    assert len(m) == expected == matching_number(adj)
    assert all(frozenset(e) in es for e in m)
    assert len({x for e in m for x in e}) == 2 * expected


def test_petersen_perfect_matching():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    g = ColoredGraph.from_red_edges(10, outer + inner + spokes)
    w = find_matching(g, RED, 5)
    assert w is not None and w.validate(g)
    assert shortest_odd_cycle(g, RED).size == 5


def test_g1_values():
    g = build_g1(4)
    assert find_clique(g, BLUE, 4) is None and find_clique(g, BLUE, 3) is not None
    assert find_fan(g, RED, 4) is None
    w = find_fan(g, RED, 3)
    assert w.center == 0 and w.validate(g) and w.size == 3
    assert clique_number(g, RED) == 8 and clique_number(g, BLUE) == 3
    assert is_free(g, TargetPair(Fan(4), Clique(4))).free


def test_fan_witness_layout():
    g = ColoredGraph.monochromatic(5, RED)
    w = find_fan(g, RED, 2)
    assert w.kind == "Fan" and w.center == 0 and w.vertices[0] == 0
    spokes, blades = w.edges[:4], w.edges[4:]
    assert all(0 in e for e in spokes) and all(0 not in e for e in blades)


def test_bipartite_restricted():
    # blue C5 on 0..4, everything else red
    ring = {(i, (i + 1) % 5) for i in range(5)}
    blue = {(min(a, b), max(a, b)) for a, b in ring}
    g = ColoredGraph.from_red_edges(7, [p for p in itertools.combinations(range(7), 2) if p not in blue])
    res = is_bipartite(g, BLUE)
    assert not res.bipartite and res.odd_cycle.validate(g)
    assert is_bipartite(g, BLUE, restricted_to=[0, 1, 2, 3]).bipartite
    assert shortest_odd_cycle(g, BLUE, restricted_to=[0, 1, 2, 3]) is None
    assert shortest_odd_cycle(g, BLUE).size == 5
    parts = is_bipartite(g, BLUE, restricted_to=[0, 1, 2]).parts
    assert sorted(parts[0] + parts[1]) == [0, 1, 2]


def test_star_vertex_non_edges_are_ignored():
    base = ColoredGraph.monochromatic(4, BLUE)
    g = StarColoredGraph(base, {0: BLUE})
    assert find_clique(g, BLUE, 5) is None
    assert find_clique(g, BLUE, 4) is not None
    full = StarColoredGraph(base, {v: BLUE for v in range(4)})
    assert find_clique(full, BLUE, 5).vertices == (0, 1, 2, 3, 4)
    assert find_fan(StarColoredGraph(ColoredGraph.from_red_edges(4, [(0, 1), (2, 3)]), {v: RED for v in range(4)}), RED, 2).center == 4


def test_witness_round_trip_and_rejection():
    g = build_g1(2)
    w = find_clique(g, RED, 4)
    assert Witness.from_dict(w.to_dict()) == w
    bogus = Witness("Clique", BLUE, w.vertices, w.edges)
    assert not bogus.validate(g)
    short = Witness("Clique", RED, (0, 1, 2), ((0, 1), (1, 2)))
    assert not short.validate(g)


@pytest.mark.parametrize("fn, arg", [(find_clique, 0), (find_fan, 0), (find_matching, 0)])
def test_nonpositive_sizes(fn, arg):
    with pytest.raises(ValueError):
        fn(build_g1(2), RED, arg)


def test_is_free_reports_red_first():
    g = ColoredGraph.monochromatic(4, RED)
    free, w = is_free(g, TargetPair(Matching(1), Clique(2)))
    assert not free and w.color is RED and w.kind == "Matching"
    free, w = is_free(ColoredGraph.monochromatic(4, BLUE), TargetPair(Fan(1), Clique(4)))
    assert not free and w.kind == "Clique" and w.color is BLUE


def test_every_graph_up_to_seven_vertices():
    # red = atlas graph, blue = its complement; covers every graph on <= 7 vertices up to isomorphism
    atlas = pytest.importorskip("networkx").graph_atlas_g()
    bad = []
    for h in atlas[1:]:
        order = h.number_of_nodes()
        red = {(min(u, v), max(u, v)) for u, v in h.edges()}
        colors = {p: ("R" if p in red else "B") for p in itertools.combinations(range(order), 2)}
        bad += detector_disagreements(order, colors)
    assert len(atlas) == 1253 and bad == []


@settings(max_examples=80, deadline=None)
@given(color_maps(max_order=10))
def test_monotone_in_size(case):
    order, colors = case
    g = to_graph(order, colors)
    for color in (RED, BLUE):
        for finder in (find_fan, find_clique, find_matching):
            found = [finder(g, color, s) is not None for s in range(1, order + 1)]
            assert found == sorted(found, reverse=True)


@settings(max_examples=80, deadline=None)
@given(color_maps(max_order=10), st.integers(1, 4))
def test_fan_is_matching_in_a_neighborhood(case, n):
    order, colors = case
    g = to_graph(order, colors)
    for color in (RED, BLUE):
        via_matching = False
        for v in range(order):
            nbrs = [u for u in range(order) if u != v and g.color(u, v) is color]
            if len(nbrs) >= 2 and find_matching(g.induced(nbrs), color, n) is not None:
                via_matching = True
        assert (find_fan(g, color, n) is not None) == via_matching


@pytest.mark.parametrize("m", range(2, 9))
def test_monochromatic_even_clique_fans(m):
    g = ColoredGraph.monochromatic(2 * m, RED)
    assert find_fan(g, RED, m - 1) is not None
    assert find_fan(g, RED, m) is None
    assert find_fan(g, BLUE, 1) is None
