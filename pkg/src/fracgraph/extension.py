"""Partial set colourings and the moves used to extend them.

A partial colouring fixes colour sets on part of the graph. The moves here
shrink it to a smaller demand while keeping chosen colours free for some
uncoloured vertices (``limitation``), colour the rest one vertex at a time
(``greedy_extend``), and finish a triangle hanging off two coloured
pendants (``fact2_extend``).

Colour sizes are ``ceil(N·h(v))``, so a palette size that clears every
denominator of ``h`` gives exact sizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import SetColoring, check_demand
from .errors import InputError, PreconditionError
from .graph import Graph


def _size(palette: int, x) -> int:
    return math.ceil(palette * Fraction(x))


@dataclass(frozen=True)
class PartialColoring:
    """Colour sets from ``1..palette`` on the vertices of ``assignment``."""

    palette: int
    assignment: dict = field(default_factory=dict)  # vertex -> frozenset of colours

    def __post_init__(self):
        if self.palette < 1:
            raise InputError(f"palette size must be positive, got {self.palette}")
        fixed = {}
        for v, s in self.assignment.items():
            s = frozenset(s)
            if any(not 1 <= c <= self.palette for c in s):
                raise InputError(f"vertex {v} uses a colour outside 1..{self.palette}")
            fixed[v] = s
        object.__setattr__(self, "assignment", fixed)

    @property
    def domain(self) -> frozenset:
        return frozenset(self.assignment)

    def __getitem__(self, v) -> frozenset:
        return self.assignment[v]

    def __contains__(self, v) -> bool:
        return v in self.assignment

    def with_colors(self, updates: dict) -> PartialColoring:
        merged = dict(self.assignment)
        merged.update(updates)
        return PartialColoring(self.palette, merged)

    def check(self, g: Graph) -> None:
        """Raise ``InputError`` if two adjacent domain vertices share a colour."""
        for v in self.assignment:
            if not 0 <= v < g.n:
                raise InputError(f"coloured vertex {v} is not in the graph")
        for u, v in g.edges():
            if u in self.assignment and v in self.assignment:
                common = self.assignment[u] & self.assignment[v]
                if common:
                    raise InputError(f"adjacent vertices {u} and {v} share colour {min(common)}")

    def to_set_coloring(self, n: int) -> SetColoring:
        missing = [v for v in range(n) if v not in self.assignment]
        if missing:
            raise InputError(f"vertices {missing} are uncoloured")
        return SetColoring(self.palette, tuple(self.assignment[v] for v in range(n)))

    @classmethod
    def from_set_coloring(cls, c: SetColoring, domain=None) -> PartialColoring:
        keep = range(len(c.sets)) if domain is None else domain
        return cls(c.palette, {v: c.sets[v] for v in keep})


@dataclass(frozen=True)
class Prescription:
    """Colours that must stay available at the uncoloured ``vertex``."""

    vertex: int
    required: frozenset

    def __post_init__(self):
        object.__setattr__(self, "required", frozenset(self.required))


def available(g: Graph, c: PartialColoring, v: int) -> frozenset:
    """Colours of ``1..N`` not used on any coloured neighbour of ``v``."""
    if v in c:
        raise InputError(f"vertex {v} is already coloured")
    used = set()
    for u in g.adj(v):
        if u in c:
            used |= c[u]
    return frozenset(range(1, c.palette + 1)) - used


def limitation(g: Graph, target_h, c: PartialColoring, prescriptions=()) -> PartialColoring:
    """Shrink every coloured vertex to exactly ``N·target_h(v)`` colours so
    each prescription's colours are unused around its target.

    A coloured neighbour of a target first loses the prescribed colours,
    then its lowest-index colours until the target size is reached.
    """
    h = check_demand(g, target_h)
    c.check(g)
    n = c.palette
    prescriptions = list(prescriptions)
    for p in prescriptions:
        if p.vertex in c:
            raise InputError(f"prescribed vertex {p.vertex} is already coloured")
        if len(p.required) > n or any(not 1 <= x <= n for x in p.required):
            raise PreconditionError(
                f"prescription at {p.vertex} does not fit the palette 1..{n}", p.vertex
            )
    for i, p in enumerate(prescriptions):
        for q in prescriptions[i + 1:]:
            if g.has_edge(p.vertex, q.vertex) and p.required & q.required:
                raise PreconditionError(
                    f"adjacent targets {p.vertex} and {q.vertex} have overlapping prescriptions",
                    p.vertex,
                )

    out = {}
    for u, s in c.assignment.items():
        need = _size(n, h[u])
        if len(s) < need:
            raise PreconditionError(
                f"vertex {u} holds {len(s)} colours, fewer than the target {need}", u
            )
        banned = set()
        for p in prescriptions:
            if g.has_edge(u, p.vertex):
                banned |= p.required
        rest = sorted(s - banned)
        if len(rest) < need:
            raise PreconditionError(
                f"vertex {u} has slack {len(s) - need} but must drop "
                f"{len(s & banned)} prescribed colours",
                u,
            )
        out[u] = frozenset(rest[len(rest) - need:])
    return PartialColoring(n, out)


@dataclass(frozen=True)
class Shortfall:
    """Why a greedy extension stopped at ``vertex``."""

    vertex: int
    available: int
    needed: int
    missing: frozenset = frozenset()  # required colours that were not available


@dataclass(frozen=True)
class GreedyOutcome:
    coloring: PartialColoring | None
    shortfall: Shortfall | None = None

    def __bool__(self):
        return self.coloring is not None


def try_greedy_extend(g: Graph, h, c: PartialColoring, order, must_include=None) -> GreedyOutcome:
    """Colour ``order`` one vertex at a time.

    Each vertex gets its ``must_include`` set, then the lowest-index
    available colours up to ``N·h(v)``. Colours reserved for a still
    uncoloured neighbour are not used as filler.
    """
    h = check_demand(g, h)
    c.check(g)
    order = list(order)
    uncolored = [v for v in range(g.n) if v not in c]
    if sorted(order) != uncolored:
        raise InputError("order must list each uncoloured vertex exactly once")
    must = {v: frozenset(s) for v, s in (must_include or {}).items()}
    for v in must:
        if v in c:
            raise InputError(f"must_include names the coloured vertex {v}")
    for v, s in must.items():
        for u in g.adj(v):
            if u in must and s & must[u]:
                raise InputError(f"must_include sets of adjacent {u} and {v} overlap")

    n = c.palette
    cur = dict(c.assignment)
    for v in order:
        partial = PartialColoring(n, cur)
        free = available(g, partial, v)
        need = _size(n, h[v])
        req = must.get(v, frozenset())
        if not req <= free:
            return GreedyOutcome(None, Shortfall(v, len(free), need, req - free))
        reserved = set()
        for u in g.adj(v):
            if u not in cur:
                reserved |= must.get(u, frozenset())
        filler = sorted(free - req - reserved)
        take = need - len(req)
        if take > len(filler):
            return GreedyOutcome(None, Shortfall(v, len(req) + len(filler), need))
        cur[v] = req | frozenset(filler[:max(take, 0)])
    return GreedyOutcome(PartialColoring(n, cur))


def greedy_extend(g: Graph, h, c: PartialColoring, order, must_include=None) -> PartialColoring | None:
    return try_greedy_extend(g, h, c, order, must_include).coloring


def fact2_extend(g: Graph, triangle, pendants, h, c: PartialColoring) -> PartialColoring | None:
    """Colour the triangle ``u v w`` whose degree-3 corners ``u, v`` hang
    off the coloured pendants ``u', v'``.

    Picks ``A``, the lowest ``(8 - d(w))·N/31`` colours of
    ``c(u') - c(v')``; colours ``w`` avoiding ``A``, then ``v`` including
    ``A``, then ``u``. Returns ``None`` when ``c(u') - c(v')`` is smaller
    than that or a step runs out of colours.
    """
    u, v, w = triangle
    up, vp = pendants
    for a, b in ((u, v), (v, w), (u, w), (u, up), (v, vp)):
        if not g.has_edge(a, b):
            raise InputError(f"expected edge ({a}, {b})")
    if len({u, v, w, up, vp}) != 5:
        raise InputError("triangle and pendants must be five distinct vertices")
    if g.degree(u) != 3 or g.degree(v) != 3:
        raise InputError("the pendant triangle corners must have degree 3")
    if up not in c or vp not in c:
        raise InputError("both pendant vertices must be coloured")
    if any(x in c for x in (u, v, w)):
        raise InputError("the triangle must be uncoloured")
    h = check_demand(g, h)
    c.check(g)

    n = c.palette
    size = _size(n, Fraction(8 - g.degree(w), 31))
    pool = sorted(c[up] - c[vp])
    if len(pool) < size:
        return None
    a = frozenset(pool[:size])

    lw = sorted(available(g, c, w) - a)
    need_w = _size(n, h[w])
    if len(lw) < need_w:
        return None
    c = c.with_colors({w: frozenset(lw[:need_w])})

    lv = available(g, c, v)
    need_v = _size(n, h[v])
    if not a <= lv:
        return None
    rest = sorted(lv - a)
    if size + len(rest) < need_v:
        return None
    c = c.with_colors({v: a | frozenset(rest[:max(need_v - size, 0)])})

    lu = sorted(available(g, c, u))
    need_u = _size(n, h[u])
    if len(lu) < need_u:
        return None
    return c.with_colors({u: frozenset(lu[:need_u])})
