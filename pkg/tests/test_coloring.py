from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bounded_graphs, graphs
from fracgraph.coloring import (
    SetColoring,
    b_fold_chromatic,
    chif_vertex_transitive,
    chromatic_number,
    coloring_from_classes,
    constant_demand,
    demand_for_degree,
    demand_witness,
    duplicate_colors,
    find_ab_coloring,
    find_demand_coloring,
    fractional_chromatic_number,
    has_demand_coloring,
    paper_demand,
    trim_coloring,
    union_composition_audit,
    verify_set_coloring,
    weighted_cover_value,
)
from fracgraph.canon import is_vertex_transitive
from fracgraph.errors import DomainError, InputError, ParseError, ResourceError
from fracgraph.graph import Graph, clique_number, distance_layer, edges_between
from fracgraph.ops import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    strong_product,
)
from fracgraph.patterns import c82, f8, f11

F = Fraction


def c5k(k):
    return strong_product(cycle_graph(5), complete_graph(k))


def brute_chromatic(g):
    for k in range(g.n + 1):
        for assign in product(range(k), repeat=g.n):
            if all(assign[u] != assign[v] for u, v in g.edges()):
                return k
    return g.n


def brute_b_fold(g, b):
    if g.n == 0:
        return 0
    a = b
    while True:
        choices = [frozenset(s) for s in combinations(range(a), b)]
        for assign in product(choices, repeat=g.n):
            if all(not assign[u] & assign[v] for u, v in g.edges()):
                return a
        a += 1


def test_demand_values():
    assert paper_demand(c82()) == (F(8, 31),) * 8
    assert paper_demand(Graph(1)) == (F(1),)
    assert paper_demand(cycle_graph(5)) == (F(10, 31),) * 5
    assert [demand_for_degree(d) for d in range(5)] == [1, F(11, 31), F(10, 31), F(9, 31), F(8, 31)]
    with pytest.raises(DomainError):
        paper_demand(c5k(2))


def test_fractional_chromatic_examples():
    assert fractional_chromatic_number(c82()) == 4
    assert fractional_chromatic_number(c5k(2)) == 5
    assert fractional_chromatic_number(Graph(1)) == 1
    assert fractional_chromatic_number(petersen_graph()) == F(5, 2)
    assert chif_vertex_transitive(c5k(3)) == F(15, 2)
    assert chif_vertex_transitive(path_graph(3)) is None
    assert chif_vertex_transitive(cycle_graph(5)) == F(5, 2)


@pytest.mark.parametrize(
    "g",
    [c82(), c5k(2), c5k(3), cycle_graph(7), petersen_graph(), complete_bipartite(3, 3)],
    ids=["C8^2", "C5xK2", "C5xK3", "C7", "petersen", "K33"],
)
def test_vertex_transitive_cross_check(g):
    assert is_vertex_transitive(g)
    assert chif_vertex_transitive(g) == fractional_chromatic_number(g)


def test_b_fold_examples():
    assert chromatic_number(c5k(3)) == 8
    assert find_ab_coloring(c5k(3), 7, 1) is None
    assert b_fold_chromatic(cycle_graph(5), 2) == 5
    assert find_ab_coloring(cycle_graph(5), 4, 2) is None
    assert chromatic_number(complete_graph(4)) == 4
    c = find_ab_coloring(cycle_graph(5), 5, 2)
    assert verify_set_coloring(cycle_graph(5), [F(2, 5)] * 5, c)


def test_b_fold_budget():
    with pytest.raises(ResourceError) as err:
        find_ab_coloring(c5k(3), 7, 1, budget=50)
    assert err.value.explored > 50


@given(graphs(max_n=7))
def test_chromatic_number_matches_brute_force(g):
    assert chromatic_number(g) == brute_chromatic(g)


@settings(max_examples=30)
@given(graphs(max_n=5))
def test_b_fold_matches_brute_force(g):
    assert b_fold_chromatic(g, 2) == brute_b_fold(g, 2)


@settings(max_examples=40)
@given(graphs(min_n=1, max_n=6), st.integers(1, 3))
def test_clique_fractional_b_fold_sandwich(g, b):
    chi_f = fractional_chromatic_number(g)
    a = b_fold_chromatic(g, b)
    assert clique_number(g) <= chi_f <= F(a, b)
    assert a == chromatic_number(strong_product(g, complete_graph(b)))


def test_weighted_cover_examples():
    assert weighted_cover_value(complete_graph(2), [F(1, 2)] * 2) == 1
    assert weighted_cover_value(c82(), paper_demand(c82())) == F(32, 31)
    assert weighted_cover_value(f8().graph, paper_demand(f8().graph)) <= 1
    assert not has_demand_coloring(c82(), paper_demand(c82()))


@given(graphs(min_n=1, max_n=7), st.data())
def test_weighted_cover_monotone(g, data):
    lo = [data.draw(st.fractions(0, 1, max_denominator=6)) for _ in range(g.n)]
    hi = [data.draw(st.fractions(x, 1, max_denominator=6)) for x in lo]
    assert weighted_cover_value(g, lo) <= weighted_cover_value(g, hi)


@given(bounded_graphs(max_n=8))
def test_constant_demand_scaling(g):
    r = F(31, 8)
    chi_f = fractional_chromatic_number(g)
    assert (weighted_cover_value(g, constant_demand(g, 1 / r)) <= 1) == (chi_f <= r)


def test_find_demand_coloring_f8_f11():
    for p in (f8(), f11()):
        h = paper_demand(p.graph)
        c = find_demand_coloring(p.graph, h, 31)
        assert c is not None and c.palette == 31
        assert verify_set_coloring(p.graph, h, c)


def test_find_demand_coloring_errors_and_infeasible():
    g = c82()
    h = paper_demand(g)
    with pytest.raises(InputError):
        find_demand_coloring(g, h, 30)
    for n in (31, 62):
        assert find_demand_coloring(g, h, n) is None


@settings(max_examples=40)
@given(graphs(min_n=1, max_n=6), st.data())
def test_find_agrees_with_lp(g, data):
    h = [F(data.draw(st.integers(0, 6)), 6) for _ in range(g.n)]
    feasible = has_demand_coloring(g, h)
    for n in (6, 12):
        c = find_demand_coloring(g, h, n)
        if c is not None:
            assert feasible and verify_set_coloring(g, h, c)
        if not feasible:
            assert c is None


@given(graphs(min_n=1, max_n=7), st.data())
def test_demand_witness_from_lp(g, data):
    h = [data.draw(st.fractions(0, 1, max_denominator=5)) for _ in range(g.n)]
    w = demand_witness(g, h)
    if has_demand_coloring(g, h):
        assert w is not None and verify_set_coloring(g, h, w)
    else:
        assert w is None


def test_verify_diagnostics():
    g = path_graph(3)
    h = [F(1, 2)] * 3
    good = SetColoring(4, (frozenset({1, 2}), frozenset({3, 4}), frozenset({1, 2})))
    assert verify_set_coloring(g, h, good)
    shared = SetColoring(4, (frozenset({1, 3}), frozenset({3, 4}), frozenset({1, 2})))
    v = verify_set_coloring(g, h, shared)
    assert not v and v.edge == (0, 1)
    short = SetColoring(4, (frozenset({1, 2}), frozenset({3}), frozenset({1, 2})))
    v = verify_set_coloring(g, h, short)
    assert not v and v.vertex == 1


def test_duplicate_colors_examples():
    c = find_demand_coloring(f8().graph, paper_demand(f8().graph), 31)
    d = duplicate_colors(c, 2)
    assert d.palette == 62
    assert [len(s) for s in d.sets] == [2 * len(s) for s in c.sets]
    assert verify_set_coloring(f8().graph, paper_demand(f8().graph), duplicate_colors(c, 3))


@settings(max_examples=40)
@given(graphs(min_n=1, max_n=7), st.data())
def test_duplicate_colors_preserves_verification(g, data):
    h = [data.draw(st.fractions(0, 1, max_denominator=4)) for _ in range(g.n)]
    c = demand_witness(g, h)
    if c is None:
        return
    for k in range(1, 5):
        assert verify_set_coloring(g, h, duplicate_colors(c, k))


def test_set_coloring_text_round_trip():
    c = SetColoring(5, (frozenset({1, 2}), frozenset(), frozenset({5})))
    text = c.to_text()
    assert text == "N=5\n0: 1 2\n1:\n2: 5\n"
    assert SetColoring.from_text(text) == c
    for bad in ("", "M=3\n", "N=3\n1: 1\n", "N=3\n0: 2 1\n", "N=3\n0: x\n"):
        with pytest.raises(ParseError):
            SetColoring.from_text(bad)
    with pytest.raises(InputError):
        SetColoring(3, (frozenset({4}),))


def test_trim_and_classes():
    c = coloring_from_classes(3, [0b101, 0b010, 0b101], 3)
    assert c.sets == (frozenset({1, 3}), frozenset({2}), frozenset({1, 3}))
    t = trim_coloring(c, [F(1, 3), F(1, 3), F(1, 3)])
    assert t.sets == (frozenset({1}), frozenset({2}), frozenset({1}))


def test_union_audit_examples():
    for v in range(8):
        a = union_composition_audit(c82(), v)
        assert a.e == 6 and a.threshold == 9 and not a.met
    for v in range(10):
        a = union_composition_audit(petersen_graph(), v)
        assert a.degree == 3 and a.e == 6 and a.met
    with pytest.raises(InputError):
        union_composition_audit(cycle_graph(5), 0)
    with pytest.raises(DomainError):
        union_composition_audit(c5k(2), 0)


@given(bounded_graphs(min_n=4, max_n=9))
def test_union_audit_tallies(g):
    for v in range(g.n):
        if g.degree(v) not in (3, 4):
            continue
        a = union_composition_audit(g, v)
        n1, n2 = distance_layer(g, v, 1), distance_layer(g, v, 2)
        assert sum((i + 1) * x for i, x in enumerate(a.a)) == a.e == edges_between(g, n1, n2)
        assert a.received == a.closed_form >= a.lower_bound
        assert a.required == g.n * demand_for_degree(a.degree)
