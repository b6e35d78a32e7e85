"""Fractional, b-fold and demand-weighted set colourings.

A demand function assigns each vertex a rational share of the palette; an
``(h, N)``-colouring gives vertex ``v`` at least ``N·h(v)`` of the colours
``1..N`` with adjacent vertices receiving disjoint sets.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .canon import is_vertex_transitive
from .errors import DomainError, InputError, ParseError, ResourceError
from .graph import (
    Graph,
    distance_layers_mask,
    independence_number,
    iter_bits,
    maximal_independent_set_masks,
)
from .lp import CoveringLP, Status, as_rational, common_denominator, solve_covering

DEFAULT_NODE_BUDGET = 5_000_000


def node_budget(explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("FRACGRAPH_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


# -- demand functions -------------------------------------------------------

def demand_for_degree(d: int) -> Fraction:
    """``(12 - d)/31`` for degrees 1..4, and 1 for an isolated vertex."""
    if d == 0:
        return Fraction(1)
    if 1 <= d <= 4:
        return Fraction(12 - d, 31)
    raise DomainError(f"demand is only defined for degrees 0..4, got {d}")


def paper_demand(g: Graph) -> tuple[Fraction, ...]:
    return tuple(demand_for_degree(d) for d in g.degrees())


def check_demand(g: Graph, h) -> tuple[Fraction, ...]:
    h = tuple(as_rational(x) for x in h)
    if len(h) != g.n:
        raise InputError(f"demand has {len(h)} entries for {g.n} vertices")
    for v, x in enumerate(h):
        if not 0 <= x <= 1:
            raise DomainError(f"demand at vertex {v} is {x}, outside [0, 1]")
    return h


def constant_demand(g: Graph, value) -> tuple[Fraction, ...]:
    return check_demand(g, [value] * g.n)


# -- set colourings ---------------------------------------------------------

@dataclass(frozen=True)
class SetColoring:
    """Palette ``1..palette`` and one colour set per vertex."""

    palette: int
    sets: tuple[frozenset, ...]

    def __post_init__(self):
        if self.palette < 1:
            raise InputError(f"palette size must be positive, got {self.palette}")
        for v, s in enumerate(self.sets):
            if any(not 1 <= c <= self.palette for c in s):
                raise InputError(f"vertex {v} uses a colour outside 1..{self.palette}")

    def __len__(self):
        return len(self.sets)

    def to_text(self) -> str:
        lines = [f"N={self.palette}"]
        for v, s in enumerate(self.sets):
            body = " ".join(str(c) for c in sorted(s))
            lines.append(f"{v}: {body}" if body else f"{v}:")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> SetColoring:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("N="):
            raise ParseError("set colouring must start with 'N=<int>'", 0)
        try:
            palette = int(lines[0][2:])
        except ValueError:
            raise ParseError(f"bad palette line {lines[0]!r}", 0) from None
        sets = []
        for k, ln in enumerate(lines[1:], start=1):
            head, sep, body = ln.partition(":")
            if not sep or not head.strip().isdigit() or int(head) != k - 1:
                raise ParseError(f"expected line '{k - 1}: ...', got {ln!r}", k)
            try:
                colors = [int(tok) for tok in body.split()]
            except ValueError:
                raise ParseError(f"non-integer colour on line {k}", k) from None
            if colors != sorted(set(colors)):
                raise ParseError(f"colours on line {k} must be strictly ascending", k)
            sets.append(frozenset(colors))
        return cls(palette, tuple(sets))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    edge: tuple[int, int] | None = None
    vertex: int | None = None

    def __bool__(self):
        return self.ok


def verify_set_coloring(g: Graph, h, c: SetColoring) -> Verdict:
    """Check disjointness on every edge and ``|c(v)| >= N·h(v)``."""
    h = check_demand(g, h)
    if len(c.sets) != g.n:
        return Verdict(False, f"colouring covers {len(c.sets)} vertices, graph has {g.n}")
    for u, v in g.edges():
        common = c.sets[u] & c.sets[v]
        if common:
            return Verdict(False, f"edge ({u}, {v}) shares colour {min(common)}", edge=(u, v))
    for v in range(g.n):
        need = c.palette * h[v]
        if len(c.sets[v]) < need:
            return Verdict(
                False, f"vertex {v} has {len(c.sets[v])} colours, needs {need}", vertex=v
            )
    return Verdict(True)


def duplicate_colors(c: SetColoring, k: int) -> SetColoring:
    """Replace colour ``i`` by the block ``(i-1)k+1 .. ik``."""
    if k < 1:
        raise InputError(f"duplication factor must be positive, got {k}")
    sets = tuple(
        frozenset(j for i in s for j in range((i - 1) * k + 1, i * k + 1)) for s in c.sets
    )
    return SetColoring(c.palette * k, sets)


def trim_coloring(c: SetColoring, h) -> SetColoring:
    """Keep the ``N·h(v)`` lowest colours of each vertex (rounded up)."""
    sets = []
    for s, x in zip(c.sets, h):
        need = math.ceil(c.palette * Fraction(x))
        sets.append(frozenset(sorted(s)[:need]))
    return SetColoring(c.palette, tuple(sets))


def coloring_from_classes(n: int, classes, palette: int) -> SetColoring:
    """Colour ``j`` (1-based) is given to the members of ``classes[j-1]``."""
    sets = [set() for _ in range(n)]
    for j, cls in enumerate(classes, start=1):
        for v in iter_bits(cls):
            sets[v].add(j)
    return SetColoring(palette, tuple(frozenset(s) for s in sets))


# -- fractional chromatic number --------------------------------------------

def _cover(g: Graph, h):
    cols = maximal_independent_set_masks(g)
    return solve_covering(CoveringLP(g.n, cols, h)), cols


def weighted_cover_value(g: Graph, h) -> Fraction:
    """Least total weight of independent sets covering ``v`` at least ``h(v)``.

    ``g`` has an ``(h, N)``-colouring for some ``N`` iff this is at most 1.
    """
    h = check_demand(g, h)
    if g.n == 0:
        return Fraction(0)
    sol, _ = _cover(g, h)
    if sol.status is not Status.OPTIMAL:
        raise AssertionError("maximal independent sets always cover every vertex")
    return sol.value


def fractional_chromatic_number(g: Graph) -> Fraction:
    return weighted_cover_value(g, [1] * g.n)


def chif_vertex_transitive(g: Graph) -> Fraction | None:
    """``n / α`` when ``g`` is vertex transitive, else ``None``."""
    if g.n == 0 or not is_vertex_transitive(g):
        return None
    return Fraction(g.n, independence_number(g))


def has_demand_coloring(g: Graph, h) -> bool:
    return weighted_cover_value(g, h) <= 1


def demand_witness(g: Graph, h) -> SetColoring | None:
    """An explicit colouring read off an optimal LP solution.

    The palette is the least common denominator of the weights and the
    demands, so every weight becomes a whole number of colours.
    """
    h = check_demand(g, h)
    if g.n == 0:
        return SetColoring(1, ())
    sol, cols = _cover(g, h)
    if sol.value > 1:
        return None
    palette = common_denominator(list(sol.weights) + list(h))
    classes = []
    for col, w in zip(cols, sol.weights):
        classes.extend([col] * int(w * palette))
    c = coloring_from_classes(g.n, classes, palette)
    return trim_coloring(c, h)


def find_demand_coloring(g: Graph, h, palette: int, budget: int | None = None) -> SetColoring | None:
    """Search for an ``(h, palette)``-colouring.

    Colour classes are maximal independent sets taken with multiplicity in
    nonincreasing lexicographic order; partial multisets are pruned when
    the LP relaxation of the remaining deficit exceeds the colours left.
    Returns a verified colouring trimmed to exact sizes, or ``None``.
    """
    h = check_demand(g, h)
    need = []
    for v, x in enumerate(h):
        q = palette * x
        if q.denominator != 1:
            raise InputError(f"N·h({v}) = {q} is not an integer")
        need.append(int(q))
    budget = node_budget(budget)
    n = g.n
    if n == 0:
        return SetColoring(palette, ())
    cols = maximal_independent_set_masks(g)
    cols.sort(key=lambda m: tuple(iter_bits(m)), reverse=True)
    m = len(cols)
    # suffix unions: which vertices columns i.. can still reach
    reach = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        reach[i] = reach[i + 1] | cols[i]
    chosen: list[int] = []
    explored = 0

    def bound_ok(i, left, deficit):
        pending = 0
        for v in range(n):
            if deficit[v] > 0:
                if deficit[v] > left:
                    return False
                pending |= 1 << v
        if not pending:
            return True
        if pending & ~reach[i]:
            return False
        lp = CoveringLP(n, cols[i:], [Fraction(max(d, 0), left) for d in deficit])
        sol = solve_covering(lp)
        return sol.status is Status.OPTIMAL and sol.value <= 1

    def dfs(i, left, deficit):
        nonlocal explored
        explored += 1
        if explored > budget:
            raise ResourceError(
                f"demand colouring search exceeded {budget} nodes",
                limit=budget,
                explored=explored,
            )
        if all(d <= 0 for d in deficit):
            return True
        if i == m or left == 0 or not bound_ok(i, left, deficit):
            return False
        col = cols[i]
        useful = max((deficit[v] for v in iter_bits(col)), default=0)
        for k in range(min(left, max(useful, 0)), -1, -1):
            new = list(deficit)
            for v in iter_bits(col):
                new[v] -= k
            chosen.extend([col] * k)
            if dfs(i + 1, left - k, new):
                return True
            del chosen[len(chosen) - k:]
        return False

    if not dfs(0, palette, need):
        return None
    c = trim_coloring(coloring_from_classes(n, chosen, palette), h)
    verdict = verify_set_coloring(g, h, c)
    if not verdict:
        raise AssertionError(f"search produced an invalid colouring: {verdict.reason}")
    return c


# -- b-fold colourings ------------------------------------------------------

def find_ab_coloring(g: Graph, a: int, b: int, budget: int | None = None) -> SetColoring | None:
    """An ``(a:b)``-colouring (``b`` colours per vertex from ``1..a``), or ``None``.

    Backtracking picks the uncoloured vertex with the fewest available
    colours; fresh colours are only introduced in increasing order, which
    removes the symmetry among unused colours.
    """
    if a < 1 or b < 1:
        raise InputError("a and b must be positive")
    budget = node_budget(budget)
    n = g.n
    masks = g.masks
    if b > a and n:
        return None
    assign: list[int | None] = [None] * n  # colour bitmasks, colour i -> bit i-1
    full = (1 << a) - 1
    explored = 0

    def available(v):
        used = 0
        for u in iter_bits(masks[v]):
            if assign[u] is not None:
                used |= assign[u]
        return full & ~used

    def rec(colored, top):
        # ``top`` = number of colours used so far; they are exactly 1..top
        nonlocal explored
        explored += 1
        if explored > budget:
            raise ResourceError(
                f"(a:b)-colouring search exceeded {budget} nodes",
                limit=budget,
                explored=explored,
            )
        if colored == n:
            return True
        pick, pick_avail, pick_count = -1, 0, None
        for v in range(n):
            if assign[v] is None:
                av = available(v)
                cnt = (av & ((1 << top) - 1)).bit_count() + (a - top)
                if pick_count is None or cnt < pick_count:
                    pick, pick_avail, pick_count = v, av, cnt
        if pick_count < b:
            return False
        old = [c for c in iter_bits(pick_avail & ((1 << top) - 1))]
        for fresh in range(0, min(b, a - top) + 1):
            reuse = b - fresh
            if reuse > len(old):
                continue
            fresh_mask = ((1 << (top + fresh)) - 1) & ~((1 << top) - 1)
            for combo in combinations(old, reuse):
                s = fresh_mask
                for c in combo:
                    s |= 1 << c
                assign[pick] = s
                if rec(colored + 1, top + fresh):
                    return True
                assign[pick] = None
        return False

    if not rec(0, 0):
        return None
    sets = tuple(frozenset(c + 1 for c in iter_bits(s)) for s in assign)
    return SetColoring(a, sets)


def b_fold_chromatic(g: Graph, b: int, budget: int | None = None) -> int:
    """Least ``a`` admitting an ``(a:b)``-colouring.

    The search starts at ``ceil(b·χ_f)``, a valid lower bound.
    """
    if b < 1:
        raise InputError(f"b must be positive, got {b}")
    if g.n == 0:
        return 0
    a = max(b, math.ceil(b * fractional_chromatic_number(g)))
    while True:
        if find_ab_coloring(g, a, b, budget) is not None:
            return a
        a += 1


def chromatic_number(g: Graph, budget: int | None = None) -> int:
    return b_fold_chromatic(g, 1, budget)


# -- local counting around a vertex ------------------------------------------

@dataclass(frozen=True)
class UnionAudit:
    """Colour count at ``vertex`` when one colouring of ``G - N(w)`` per
    vertex ``w`` is combined on disjoint palettes of size ``M``.

    ``a[i-1]`` counts second-neighbourhood vertices with exactly ``i``
    neighbours in ``N(vertex)``. ``received`` and ``closed_form`` are the
    total colour count as a multiple of ``M`` (computed directly and by the
    closed linear form); ``required`` is ``n·h(vertex)``.
    """

    vertex: int
    degree: int
    a: tuple[int, ...]
    e: int
    threshold: int
    met: bool
    received: Fraction
    closed_form: Fraction
    lower_bound: Fraction
    required: Fraction

    @property
    def sufficient(self) -> bool:
        return self.received >= self.required


def union_composition_audit(g: Graph, v: int) -> UnionAudit:
    if g.max_degree > 4:
        raise DomainError("union count needs maximum degree at most 4")
    d = g.degree(v)
    if d not in (3, 4):
        raise InputError(f"vertex {v} has degree {d}; the count needs degree 3 or 4")
    masks = g.masks
    layers = distance_layers_mask(g, v)
    n1 = layers[1]
    n2 = layers[2] if len(layers) > 2 else 0
    a = [0] * d
    for w in iter_bits(n2):
        a[(masks[w] & n1).bit_count() - 1] += 1
    e = sum((i + 1) * x for i, x in enumerate(a))
    n = g.n

    received = Fraction(0)
    for w in range(g.n):
        if n1 >> w & 1:
            continue
        received += demand_for_degree((masks[v] & ~masks[w]).bit_count())

    if d == 3:
        closed = Fraction(9 * n + a[0] + 2 * a[1] + 22 * a[2] - 5, 31)
        lower = Fraction(9 * n + e - 5, 31)
        threshold = 5
    else:
        closed = Fraction(8 * n + a[0] + 2 * a[1] + 3 * a[2] + 23 * a[3] - 9, 31)
        lower = Fraction(8 * n + e - 9, 31)
        threshold = 9
    return UnionAudit(
        vertex=v,
        degree=d,
        a=tuple(a),
        e=e,
        threshold=threshold,
        met=e >= threshold,
        received=received,
        closed_form=closed,
        lower_bound=lower,
        required=n * demand_for_degree(d),
    )
