"""Structural audits: which reducible configurations a graph contains, and
the per-vertex edge counts between first and second neighbourhoods."""
from __future__ import annotations

from dataclasses import dataclass

from .coloring import UnionAudit, union_composition_audit
from .errors import DomainError
from .graph import Graph, iter_bits
from .patterns import PatternLibrary, builtin_patterns, find_embedding


@dataclass(frozen=True)
class AuditEntry:
    name: str
    present: bool
    embedding: dict | None  # role or pattern vertex -> host vertex


def _triangles(g: Graph):
    m = g.masks
    for u in range(g.n):
        for v in iter_bits(m[u] & ~((2 << u) - 1)):
            for w in iter_bits(m[u] & m[v] & ~((2 << v) - 1)):
                yield u, v, w


def bad_four_vertex(g: Graph) -> dict | None:
    """A degree-4 vertex inside a triangle with two degree-3 neighbours."""
    in_triangle = set()
    for t in _triangles(g):
        in_triangle.update(t)
    for v in sorted(in_triangle):
        if g.degree(v) != 4:
            continue
        threes = [u for u in iter_bits(g.masks[v]) if g.degree(u) == 3]
        if len(threes) >= 2:
            return {"v": v, "n1": threes[0], "n2": threes[1]}
    return None


def triangles_sharing_edge(g: Graph) -> dict | None:
    for u, v, w in _triangles(g):
        for x in iter_bits(g.masks[u] & g.masks[v] & ~(1 << w)):
            return {"u": u, "v": v, "w": w, "x": x}
        for x in iter_bits(g.masks[u] & g.masks[w] & ~(1 << v)):
            return {"u": u, "v": w, "w": v, "x": x}
        for x in iter_bits(g.masks[v] & g.masks[w] & ~(1 << u)):
            return {"u": v, "v": w, "w": u, "x": x}
    return None


def triangles_sharing_vertex(g: Graph) -> dict | None:
    """Two triangles meeting in exactly one vertex."""
    by_vertex: dict[int, list] = {}
    for t in _triangles(g):
        for v in t:
            for other in by_vertex.get(v, ()):
                if len(set(t) & set(other)) == 1:
                    return {"shared": v, "first": other, "second": t}
            by_vertex.setdefault(v, []).append(t)
    return None


def four_vertex_without_four_neighbour(g: Graph) -> dict | None:
    for v in range(g.n):
        if g.degree(v) == 4 and all(g.degree(u) != 4 for u in iter_bits(g.masks[v])):
            return {"v": v}
    return None


PREDICATES = {
    "bad 4-vertex": bad_four_vertex,
    "two triangles sharing an edge": triangles_sharing_edge,
    "two triangles sharing exactly one vertex": triangles_sharing_vertex,
    "4-vertex without a 4-neighbour": four_vertex_without_four_neighbour,
}


def audit_patterns(g: Graph, library: PatternLibrary | None = None) -> list[AuditEntry]:
    """Every library pattern (with its degree constraints) and every
    structural predicate, in that order."""
    lib = builtin_patterns() if library is None else library
    out = []
    for p in lib:
        emb = find_embedding(g, p) if p.graph.n <= g.n else None
        if emb is not None and p.labels:
            emb = {p.label(k): v for k, v in emb.items()}
        out.append(AuditEntry(p.name, emb is not None, emb))
    for name, pred in PREDICATES.items():
        hit = pred(g)
        out.append(AuditEntry(name, hit is not None, hit))
    return out


def lemma4_audit(g: Graph) -> list[UnionAudit]:
    """Edge counts between ``N(v)`` and ``N²(v)`` for every vertex of degree
    3 or 4, with the thresholds 5 and 9 and the colour-union tallies."""
    if g.max_degree > 4:
        raise DomainError("the neighbourhood audit needs maximum degree at most 4")
    return [union_composition_audit(g, v) for v in range(g.n) if g.degree(v) in (3, 4)]
