from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from fracgraph.errors import InputError
from fracgraph.graph import clique_number, independence_number, maximal_independent_set_masks
from fracgraph.lp import (
    CoveringLP,
    Rational,
    Status,
    as_rational,
    common_denominator,
    solve_covering,
    solve_packing,
)
from fracgraph.ops import complete_graph, cycle_graph
from fracgraph.patterns import c82


def solve_exact(rows, rhs):
    """Unique solution of a square system, or None when singular."""
    n = len(rows)
    a = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def vertex_oracle(a_rows, b, c):
    """max c·y over {A y <= b, y >= 0} by enumerating every basic point.

    Only meaningful for bounded problems.
    """
    n = len(c)
    cons = [(list(r), bi) for r, bi in zip(a_rows, b)]
    cons += [([-int(i == j) for j in range(n)], 0) for i in range(n)]
    best = None
    for subset in combinations(cons, n):
        y = solve_exact([r for r, _ in subset], [bi for _, bi in subset])
        if y is None:
            continue
        if all(sum(Fraction(x) * yi for x, yi in zip(r, y)) <= bi for r, bi in cons):
            val = sum(Fraction(ci) * yi for ci, yi in zip(c, y))
            best = val if best is None else max(best, val)
    return best


def cover_value(cols, n, h):
    return solve_covering(CoveringLP(n, cols, h)).value


def test_rational_arithmetic():
    assert Rational(12 - 4, 31) == Fraction(8, 31)
    assert 4 - Rational(31, 8) == Rational(1, 8)
    assert common_denominator([Rational(1, 2), Rational(1, 3)]) == 6
    with pytest.raises(ZeroDivisionError):
        Rational(1, 0)
    with pytest.raises(InputError):
        as_rational(0.5)
    assert as_rational("3/4") == Fraction(3, 4)


def test_covering_examples():
    assert cover_value([1, 2, 4], 3, [1, 1, 1]) == 3
    c5 = cycle_graph(5)
    sol = solve_covering(CoveringLP(5, maximal_independent_set_masks(c5), [1] * 5))
    assert sol.value == Fraction(5, 2)
    assert sorted(sol.weights) == [Fraction(1, 2)] * 5
    g = c82()
    assert cover_value(maximal_independent_set_masks(g), 8, [Fraction(8, 31)] * 8) == Fraction(32, 31)


def test_covering_errors_and_infeasible():
    with pytest.raises(InputError):
        CoveringLP(3, [1, 2], [1, 1])
    with pytest.raises(InputError):
        CoveringLP(2, [4], [1, 1])
    with pytest.raises(InputError):
        solve_covering(CoveringLP(1, [1], [2]))
    sol = solve_covering(CoveringLP(2, [1], [1, 1]))
    assert sol.status is Status.INFEASIBLE


def test_packing_unbounded_and_degenerate():
    assert solve_packing([[1, -1]], [1], [1, 1]).status is Status.UNBOUNDED
    # a degenerate vertex where the naive ratio test ties
    res = solve_packing([[1, 1], [1, 0], [0, 1]], [1, 1, 1], [1, 1])
    assert res.status is Status.OPTIMAL and res.value == 1
    with pytest.raises(InputError):
        solve_packing([[1, 1]], [1, 2], [1, 1])
    with pytest.raises(InputError):
        solve_packing([[1, 1]], [-1], [1, 1])


small_fraction = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def packing_problems(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 4))
    rows = [[draw(st.fractions(0, 3, max_denominator=3)) for _ in range(n)] for _ in range(m)]
    # a full row of positive entries keeps the region bounded
    rows.append([Fraction(1)] * n)
    b = [draw(st.fractions(0, 4, max_denominator=5)) for _ in range(m + 1)]
    c = [draw(small_fraction) for _ in range(n)]
    return rows, b, c


@given(packing_problems())
def test_packing_matches_vertex_oracle(prob):
    rows, b, c = prob
    res = solve_packing(rows, b, c)
    assert res.status is Status.OPTIMAL
    assert res.value == vertex_oracle(rows, b, c)
    # primal feasibility and complementary dual value
    for r, bi in zip(rows, b):
        assert sum(x * y for x, y in zip(r, res.primal)) <= bi
    assert all(y >= 0 for y in res.primal) and all(d >= 0 for d in res.dual)
    assert sum(d * bi for d, bi in zip(res.dual, b)) == res.value
    for j in range(len(c)):
        assert sum(d * r[j] for d, r in zip(res.dual, rows)) >= c[j]


@st.composite
def demands(draw, n):
    return [draw(st.fractions(0, 1, max_denominator=7)) for _ in range(n)]


@given(graphs(min_n=1, max_n=6), st.data())
def test_covering_duality_and_oracle(g, data):
    h = data.draw(demands(g.n))
    cols = maximal_independent_set_masks(g)
    sol = solve_covering(CoveringLP(g.n, cols, h))
    assert sol.status is Status.OPTIMAL
    assert sum(sol.weights) == sol.value == sum(d * y for d, y in zip(h, sol.duals))
    rows = [[int(col >> v & 1) for v in range(g.n)] for col in cols]
    assert vertex_oracle(rows, [1] * len(cols), h) == sol.value


@given(graphs(min_n=1, max_n=8), st.randoms(use_true_random=False))
def test_covering_value_invariants(g, rng):
    cols = maximal_independent_set_masks(g)
    ones = [1] * g.n
    sol = solve_covering(CoveringLP(g.n, cols, ones))
    assert sol.value >= Fraction(g.n, independence_number(g))
    assert sol.value >= clique_number(g)
    shuffled = cols[:]
    rng.shuffle(shuffled)
    assert cover_value(shuffled, g.n, ones) == sol.value
    support = [cols[i] for i in sol.support()]
    assert cover_value(support, g.n, ones) == sol.value
    perm = list(range(g.n))
    rng.shuffle(perm)
    moved = [sum(1 << perm[v] for v in range(g.n) if col >> v & 1) for col in cols]
    assert cover_value(moved, g.n, ones) == sol.value


def test_complete_graph_values():
    for n in range(1, 7):
        g = complete_graph(n)
        assert cover_value(maximal_independent_set_masks(g), n, [1] * n) == n
