"""Canonical labelling, isomorphism and automorphism orbits.

Individualisation-refinement: the vertex partition is refined to an
equitable one by neighbour counts, then a search tree individualises
vertices of the first non-singleton cell. Leaves are discrete partitions,
i.e. vertex orderings; the canonical ordering is the leaf with the largest
``(cell-size trace, relabelled adjacency)`` key. Leaves with equal
adjacency under two orderings yield automorphisms, which prune sibling
subtrees lying in a common orbit of the current pointwise stabiliser.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceError
from .graph import Graph, iter_bits


def _refine(masks, cells):
    """Refine ``cells`` (list of lists) until equitable. Returns a new list."""
    while True:
        cellmasks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            cellmasks.append(m)
        new = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups = {}
            for v in c:
                mv = masks[v]
                sig = tuple((mv & cm).bit_count() for cm in cellmasks)
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                new.append(c)
                continue
            changed = True
            for sig in sorted(groups):
                new.append(groups[sig])
        cells = new
        if not changed:
            return cells


def _relabel_key(masks, order):
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    out = []
    for v in order:
        m = 0
        for u in iter_bits(masks[v]):
            m |= 1 << pos[u]
        out.append(m)
    return tuple(out)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


@dataclass(frozen=True)
class Canonical:
    """Result of a canonical-labelling search.

    ``order[i]`` is the original vertex placed at canonical position ``i``;
    ``key`` is the relabelled adjacency (per-position neighbour masks);
    ``generators`` are automorphisms as tuples ``perm[v] = image``.
    """

    order: tuple[int, ...]
    key: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    orbits: tuple[int, ...]  # orbit representative (smallest vertex) per vertex

    @property
    def labels(self) -> tuple[int, ...]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return tuple(pos)


def canonical_labeling(g: Graph, initial_cells=None, node_limit: int | None = None) -> Canonical:
    """Search for the canonical ordering of ``g``.

    ``initial_cells`` optionally gives an ordered colouring of the vertices
    (list of vertex lists); canonical positions then respect it.
    """
    n = g.n
    masks = g.masks
    if n == 0:
        return Canonical((), (), (), ())
    start = [list(c) for c in initial_cells] if initial_cells else [list(range(n))]
    root = _refine(masks, start)

    gens: list[tuple[int, ...]] = []
    first = None  # (trace, key, order) of the leftmost leaf
    best = None
    explored = 0

    def record_aut(order_a, order_b):
        perm = [0] * n
        for a, b in zip(order_a, order_b):
            perm[a] = b
        perm = tuple(perm)
        if perm not in gens and any(perm[i] != i for i in range(n)):
            gens.append(perm)

    def stabiliser_orbits(prefix):
        uf = _UnionFind(n)
        for p in gens:
            if all(p[v] == v for v in prefix):
                for v in range(n):
                    uf.union(v, p[v])
        return uf

    def search(cells, prefix, trace):
        nonlocal first, best, explored
        explored += 1
        if node_limit is not None and explored > node_limit:
            raise ResourceError(
                f"canonical labelling exceeded {node_limit} search nodes",
                limit=node_limit,
                explored=explored,
            )
        if best is not None:
            # no leaf below can beat the best one or be equivalent to the first
            depth = len(trace)
            if trace < best[0][:depth] and trace != first[0][:depth]:
                return
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            key = _relabel_key(masks, order)
            if first is None:
                first = best = (trace, key, order)
                return
            if key == first[1]:
                record_aut(first[2], order)
            if (trace, key) > best[:2]:
                best = (trace, key, order)
            elif key == best[1]:
                record_aut(best[2], order)
            return
        cell = cells[target]
        tried = []
        for v in sorted(cell):
            if tried:
                uf = stabiliser_orbits(prefix)
                rv = uf.find(v)
                if any(uf.find(t) == rv for t in tried):
                    continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            child = _refine(masks, cells[:target] + [[v], rest] + cells[target + 1:])
            search(child, prefix + [v], trace + (tuple(len(c) for c in child),))

    search(root, [], (tuple(len(c) for c in root),))

    uf = _UnionFind(n)
    for p in gens:
        for v in range(n):
            uf.union(v, p[v])
    orbits = tuple(uf.find(v) for v in range(n))
    _, key, order = best
    return Canonical(tuple(order), key, tuple(gens), orbits)


def canonical_graph(g: Graph) -> Graph:
    return Graph._trusted(canonical_labeling(g).key)


def canonical_form(g: Graph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic."""
    from .graph6 import write_graph6

    return write_graph6(canonical_graph(g)).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_labeling(g).key == canonical_labeling(h).key


def automorphism_orbits(g: Graph) -> list[frozenset]:
    """Vertex orbits of the automorphism group, ordered by smallest member."""
    reps = canonical_labeling(g).orbits
    groups: dict[int, set] = {}
    for v, r in enumerate(reps):
        groups.setdefault(r, set()).add(v)
    return [frozenset(groups[r]) for r in sorted(groups)]


def is_vertex_transitive(g: Graph) -> bool:
    if g.n <= 1:
        return True
    if len(set(g.degrees())) > 1:
        return False
    return len(set(canonical_labeling(g).orbits)) == 1
