"""Named reference graphs and (induced) subgraph matching.

A :class:`Pattern` is a small graph with a match mode and optional
host-degree constraints on some of its vertices. ``contains`` runs a
backtracking search over injective maps, extending the partial map one
pattern vertex at a time in a connectivity-first order; candidate images
are filtered by bitmask intersection of the images' neighbourhoods.

Pattern files are plain text::

    # free-form provenance comments
    name=F11
    mode=SUBGRAPH
    labels=u,v,w,...          (optional)
    degrees=0:3,1:3           (optional)
    J{OWxGaCWR_               (graph6)
"""
from __future__ import annotations

import enum
from collections.abc import Iterator
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations
from pathlib import Path

from .canon import is_isomorphic
from .coloring import Verdict
from .errors import InputError, ParseError, ResourceError
from .graph import Graph, iter_bits, is_clique_free
from .graph6 import read_graph6, write_graph6
from .ops import (
    add_edges,
    complete_graph,
    cycle_graph,
    delete_vertices,
    path_graph,
    square,
    strong_product,
)


class MatchMode(enum.Enum):
    SUBGRAPH = "SUBGRAPH"
    INDUCED = "INDUCED"


@dataclass(frozen=True)
class Pattern:
    name: str
    graph: Graph
    mode: MatchMode = MatchMode.SUBGRAPH
    degrees: dict = field(default_factory=dict)  # pattern vertex -> host degree
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if isinstance(self.mode, str):
            object.__setattr__(self, "mode", MatchMode(self.mode))
        for v, d in self.degrees.items():
            if not 0 <= v < self.graph.n:
                raise InputError(f"pattern {self.name}: constraint on missing vertex {v}")
            if d < self.graph.degree(v):
                raise InputError(
                    f"pattern {self.name}: vertex {v} needs host degree {d} "
                    f"below its pattern degree {self.graph.degree(v)}"
                )
        if self.labels is not None and len(self.labels) != self.graph.n:
            raise InputError(f"pattern {self.name}: {len(self.labels)} labels for {self.graph.n} vertices")

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def with_degrees(self, name: str, **by_label) -> Pattern:
        """Copy with host-degree constraints given by vertex label."""
        index = {lab: i for i, lab in enumerate(self.labels or ())}
        degrees = {index[k]: d for k, d in by_label.items()}
        return Pattern(name, self.graph, self.mode, degrees, self.labels)

    def to_text(self, comments=()) -> str:
        lines = [f"# {c}" for c in comments]
        lines.append(f"name={self.name}")
        lines.append(f"mode={self.mode.value}")
        if self.labels:
            lines.append("labels=" + ",".join(self.labels))
        if self.degrees:
            lines.append("degrees=" + ",".join(f"{v}:{d}" for v, d in sorted(self.degrees.items())))
        lines.append(write_graph6(self.graph))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Pattern:
        fields = {}
        body = None
        for k, raw in enumerate(text.splitlines()):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" in line and line.split("=", 1)[0] in ("name", "mode", "labels", "degrees"):
                key, value = line.split("=", 1)
                fields[key] = value.strip()
            elif body is None:
                body = line
            else:
                raise ParseError(f"unexpected extra line {line!r}", k)
        if "name" not in fields or "mode" not in fields or body is None:
            raise ParseError("pattern file needs name=, mode= and a graph6 line")
        try:
            mode = MatchMode(fields["mode"])
        except ValueError:
            raise ParseError(f"unknown match mode {fields['mode']!r}") from None
        degrees = {}
        if fields.get("degrees"):
            for item in fields["degrees"].split(","):
                v, _, d = item.partition(":")
                try:
                    degrees[int(v)] = int(d)
                except ValueError:
                    raise ParseError(f"bad degree constraint {item!r}") from None
        labels = tuple(fields["labels"].split(",")) if fields.get("labels") else None
        return cls(fields["name"], read_graph6(body), mode, degrees, labels)


def load_pattern(path) -> Pattern:
    return Pattern.from_text(Path(path).read_text())


# -- matching ---------------------------------------------------------------

def _match_order(p: Graph) -> list[int]:
    """Connectivity-first order, starting from a maximum-degree vertex."""
    n = p.n
    masks = p.masks
    order: list[int] = []
    placed = 0
    while len(order) < n:
        frontier = 0
        for v in order:
            frontier |= masks[v]
        frontier &= ~placed
        pool = frontier if frontier else ((1 << n) - 1) & ~placed

        def rank(v):
            return ((masks[v] & placed).bit_count(), masks[v].bit_count(), -v)

        v = max(iter_bits(pool), key=rank)
        order.append(v)
        placed |= 1 << v
    return order


def iter_embeddings(host: Graph, pattern: Pattern, node_limit: int | None = None) -> Iterator[dict]:
    """Yield every pattern -> host vertex map satisfying the match mode."""
    p = pattern.graph
    pm, hm = p.masks, host.masks
    induced = pattern.mode is MatchMode.INDUCED
    order = _match_order(p)
    hdeg = host.degrees()
    base = []
    for v in order:
        need = pm[v].bit_count()
        fixed = pattern.degrees.get(v)
        cand = 0
        for x in range(host.n):
            if (fixed is None and hdeg[x] >= need) or hdeg[x] == fixed:
                cand |= 1 << x
        base.append(cand)
    image = [0] * p.n
    explored = 0

    def rec(k, used):
        nonlocal explored
        explored += 1
        if node_limit is not None and explored > node_limit:
            raise ResourceError(
                f"pattern search for {pattern.name} exceeded {node_limit} nodes",
                limit=node_limit,
                explored=explored,
            )
        if k == len(order):
            yield {v: image[v] for v in range(p.n)}
            return
        v = order[k]
        cand = base[k] & ~used
        for u in order[:k]:
            if pm[v] >> u & 1:
                cand &= hm[image[u]]
            elif induced:
                cand &= ~hm[image[u]]
            if not cand:
                return
        for x in iter_bits(cand):
            image[v] = x
            yield from rec(k + 1, used | 1 << x)

    yield from rec(0, 0)


def find_embedding(host: Graph, pattern: Pattern, node_limit: int | None = None) -> dict | None:
    return next(iter_embeddings(host, pattern, node_limit), None)


def contains(host: Graph, pattern: Pattern, node_limit: int | None = None) -> bool:
    return find_embedding(host, pattern, node_limit) is not None


def brute_force_contains(host: Graph, pattern: Pattern) -> bool:
    """Reference matcher over all injections; for tiny instances only."""
    p = pattern.graph
    induced = pattern.mode is MatchMode.INDUCED
    for img in permutations(range(host.n), p.n):
        if any(host.degree(img[v]) != d for v, d in pattern.degrees.items()):
            continue
        ok = True
        for a in range(p.n):
            for b in range(a + 1, p.n):
                pe = p.has_edge(a, b)
                he = host.has_edge(img[a], img[b])
                if (pe and not he) or (induced and he and not pe):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


# -- library ----------------------------------------------------------------

class PatternLibrary:
    """Ordered, name-unique collection of patterns."""

    def __init__(self, patterns=()):
        self._items: dict[str, Pattern] = {}
        for p in patterns:
            self.add(p)

    def add(self, p: Pattern) -> None:
        if p.name in self._items:
            raise InputError(f"duplicate pattern name {p.name!r}")
        self._items[p.name] = p

    def __getitem__(self, name: str) -> Pattern:
        return self._items[name]

    def __contains__(self, name) -> bool:
        return name in self._items

    def __iter__(self):
        return iter(self._items.values())

    def __len__(self):
        return len(self._items)

    def names(self) -> list[str]:
        return list(self._items)

    @classmethod
    def from_directory(cls, path) -> PatternLibrary:
        return cls(load_pattern(f) for f in sorted(Path(path).glob("*.pat")))


def _labelled(name, labels, edges) -> Pattern:
    labels = labels.split()
    index = {lab: i for i, lab in enumerate(labels)}
    return Pattern(name, Graph(len(labels), [(index[a], index[b]) for a, b in edges]), labels=tuple(labels))


def _data_pattern(filename: str) -> Pattern:
    text = resources.files("fracgraph").joinpath("data").joinpath("patterns").joinpath(filename).read_text()
    return Pattern.from_text(text)


def c82() -> Graph:
    """Square of the 8-cycle; vertex ``i`` is cycle vertex ``v_{i+1}``."""
    return square(cycle_graph(8))


def diamond() -> Pattern:
    """Triangle ``uvw`` plus ``x`` adjacent to ``u`` and ``v``."""
    return _labelled("F4", "u v w x", [("u", "v"), ("u", "w"), ("v", "w"), ("x", "u"), ("x", "v")])


def book3() -> Pattern:
    """Edge ``uv`` with three common neighbours ``a, b, c``."""
    edges = [("u", "v")] + [(s, t) for s in "uv" for t in "abc"]
    return _labelled("F5", "u v a b c", edges)


def f7() -> Pattern:
    return _data_pattern("f7.pat")


def f8() -> Pattern:
    return _data_pattern("f8.pat")


def f11() -> Pattern:
    return _data_pattern("f11.pat")


def builtin_patterns() -> PatternLibrary:
    tri = _labelled("triangle", "u v w", [("u", "v"), ("u", "w"), ("v", "w")])
    p3 = _labelled("P3", "u1 u2 u3", [("u1", "u2"), ("u2", "u3")])
    p4 = _labelled("P4", "u1 u2 u3 u4", [("u1", "u2"), ("u2", "u3"), ("u3", "u4")])
    f4, f5, g7, g8, g11 = diamond(), book3(), f7(), f8(), f11()
    lib = PatternLibrary([
        Pattern("K4", complete_graph(4)),
        Pattern("C8^2", c82()),
        Pattern("P5^2", square(path_graph(5))),
        f4,
        f5,
        Pattern("C5xK2", strong_product(cycle_graph(5), complete_graph(2))),
        Pattern("C5xK3", strong_product(cycle_graph(5), complete_graph(3))),
        g8,
        g11,
        g7,
        # degree-annotated configurations
        f4.with_degrees("F4[u,v,w:3]", u=3, v=3, w=3),
        g7.with_degrees("F7[u:3]", u=3),
        f4.with_degrees("F4[u:3]", u=3),
        tri.with_degrees("triangle[3,3,3]", u=3, v=3, w=3),
        p3.with_degrees("path[3,3,3]", u1=3, u2=3, u3=3),
        tri.with_degrees("triangle[3,3,*]", u=3, v=3),
        p4.with_degrees("path[3,3,*,3]", u1=3, u2=3, u4=3),
        f4.with_degrees("F4[w,x:3]", w=3, x=3),
        f4.with_degrees("F4[x:3]", x=3),
        tri.with_degrees("triangle[3,*,*]", u=3),
    ])
    return lib


# -- reconstruction self-checks -------------------------------------------------

def _only(s: set):
    return next(iter(s)) if len(s) == 1 else None


def f11_consistency_check(g: Graph | None = None) -> Verdict:
    """Check the F11 structure: roles are inferred from the graph, so the
    answer does not depend on vertex labels.

    Requires two degree-3 vertices ``u, v`` on a triangle ``uvw``, pendant
    neighbours ``u', v'``, the two other neighbours ``w1, w2`` of ``w``;
    ``x, y`` the common neighbours of ``u', v'``; ``a, b`` their last
    neighbours with ``a, b`` joined to ``w1, w2`` and each other and
    ``ax, ay`` absent; and ``G - {u,v,w} + w1u' + w2v'`` isomorphic to C8^2.
    """
    g = f11().graph if g is None else g
    if g.n != 11:
        return Verdict(False, f"expected 11 vertices, got {g.n}")
    if g.max_degree > 4 or not is_clique_free(g, 4):
        return Verdict(False, "graph must have maximum degree 4 and no K4")
    deg3 = [v for v in range(g.n) if g.degree(v) == 3]
    if len(deg3) != 2:
        return Verdict(False, f"expected exactly two degree-3 vertices, got {deg3}")
    first_failure = None
    for u, v in (deg3, deg3[::-1]):
        N = g.adj
        if v not in N(u):
            first_failure = first_failure or "the two degree-3 vertices are not adjacent"
            continue
        w = _only((N(u) & N(v)))
        if w is None:
            first_failure = first_failure or "u and v need exactly one common neighbour w"
            continue
        up = _only(N(u) - {v, w})
        vp = _only(N(v) - {u, w})
        rest_w = sorted(N(w) - {u, v})
        if up is None or vp is None or up == vp or len(rest_w) != 2:
            first_failure = first_failure or "pendant edges uu', vv' or ww1, ww2 missing"
            continue
        common = sorted((N(up) & N(vp)) - {u, v})
        if len(common) != 2:
            first_failure = first_failure or "u' and v' need exactly two common neighbours x, y"
            continue
        for w1, w2 in (rest_w, rest_w[::-1]):
            for x, y in (common, common[::-1]):
                a = _only(N(up) - {u, x, y})
                b = _only(N(vp) - {v, x, y})
                reason = _f11_roles_fail(g, u, v, w, up, vp, x, y, w1, w2, a, b)
                if reason is None:
                    return Verdict(True)
                first_failure = first_failure or reason
    return Verdict(False, first_failure or "no consistent role assignment")


def _f11_roles_fail(g, u, v, w, up, vp, x, y, w1, w2, a, b):
    if a is None or b is None or a == b:
        return "u' and v' need one further neighbour each (a, b)"
    need = [(x, y), (x, w1), (y, w2), (a, w1), (a, w2), (a, b), (b, w1), (b, w2)]
    for s, t in need:
        if not g.has_edge(s, t):
            return f"edge {s}-{t} missing"
    for s, t in [(a, x), (a, y)]:
        if g.has_edge(s, t):
            return f"edge {s}-{t} must be absent"
    rest, mp = delete_vertices(g, (u, v, w))
    try:
        rest = add_edges(rest, [(mp[w1], mp[up]), (mp[w2], mp[vp])])
    except InputError:
        return "w1u' or w2v' already present"
    if set(rest.adj(mp[up])) != {mp[a], mp[w1], mp[x], mp[y]}:
        return "neighbourhood of u' after the edge additions is not {a, w1, x, y}"
    if set(rest.adj(mp[vp])) != {mp[b], mp[w2], mp[x], mp[y]}:
        return "neighbourhood of v' after the edge additions is not {b, w2, x, y}"
    if not is_isomorphic(rest, c82()):
        return "G - {u,v,w} + w1u' + w2v' is not C8^2"
    return None


def f7_consistency_check(g: Graph | None = None) -> Verdict:
    """Check the F7 structure with roles inferred from the graph.

    ``x`` is the apex of two diamonds ``{u,v,w,x}`` and ``{a,b,c,x}``
    (triangles ``uvw`` and ``abc``, ``x`` adjacent to ``u, v, a, b``),
    joined by the edge ``wc``; internal degrees are 4 at ``x`` and 3
    everywhere else.
    """
    g = f7().graph if g is None else g
    if g.n != 7:
        return Verdict(False, f"expected 7 vertices, got {g.n}")
    N = g.adj
    first_failure = None
    for x in range(7):
        if g.degree(x) < 4:
            continue
        for u, v, a, b in permutations(sorted(N(x)), 4):
            if u > v or a > b or u > a:
                continue
            if not (g.has_edge(u, v) and g.has_edge(a, b)):
                continue
            w = _only((N(u) & N(v)) - {x})
            c = _only((N(a) & N(b)) - {x})
            if w is None or c is None or w == c or w in (a, b) or c in (u, v):
                continue
            if not g.has_edge(w, c):
                first_failure = first_failure or "edge w-c joining the two diamonds is missing"
                continue
            if g.degree(x) != 4:
                return Verdict(False, f"apex x has internal degree {g.degree(x)}, expected 4")
            for name, z in zip("uvwabc", (u, v, w, a, b, c)):
                if g.degree(z) != 3:
                    return Verdict(
                        False, f"{name} has internal degree {g.degree(z)}, expected 3"
                    )
            return Verdict(True)
    return Verdict(False, first_failure or "no two diamonds sharing an apex")
