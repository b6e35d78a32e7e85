"""Graph constructions: products, squares, contraction, edge edits and
a few named families used across the package and its tests."""
from __future__ import annotations

from typing import NamedTuple

from .errors import InputError, ResourceError
from .graph import MAX_VERTICES, Graph, _mask_arg, distance_layers_mask, iter_bits


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    off = g.n
    return Graph(g.n + h.n, g.edges() + [(u + off, v + off) for u, v in h.edges()])


def strong_product(g: Graph, h: Graph) -> Graph:
    """Strong product; vertex ``(u, x)`` has index ``u * h.n + x``.

    ``(u, x) ~ (v, y)`` iff the pairs differ and each coordinate is equal
    or adjacent in its factor.
    """
    n = g.n * h.n
    if n > MAX_VERTICES:
        raise ResourceError(
            f"product has {n} vertices, size cap is {MAX_VERTICES}", limit=MAX_VERTICES
        )
    k = h.n
    gm, hm = g.masks, h.masks
    masks = []
    for u in range(g.n):
        gclosed = gm[u] | 1 << u
        for x in range(k):
            hclosed = hm[x] | 1 << x
            m = 0
            for v in iter_bits(gclosed):
                for y in iter_bits(hclosed):
                    m |= 1 << (v * k + y)
            m &= ~(1 << (u * k + x))
            masks.append(m)
    return Graph._trusted(tuple(masks))


def square(g: Graph) -> Graph:
    """Same vertices, adjacent iff at distance 1 or 2."""
    masks = g.masks
    out = []
    for v in range(g.n):
        m = masks[v]
        for u in iter_bits(masks[v]):
            m |= masks[u]
        out.append(m & ~(1 << v))
    return Graph._trusted(tuple(out))


def graph_power(g: Graph, k: int) -> Graph:
    out = []
    for v in range(g.n):
        layers = distance_layers_mask(g, v)
        m = 0
        for layer in layers[1:k + 1]:
            m |= layer
        out.append(m)
    return Graph._trusted(tuple(out))


class Contraction(NamedTuple):
    graph: Graph
    fat: int
    mapping: dict  # old vertex -> new vertex (members of the set map to ``fat``)


def contract(g: Graph, s) -> Contraction:
    """Replace the vertices of ``s`` by one fat vertex.

    Survivors keep their relative order and are renumbered ``0..``; the fat
    vertex is the last vertex. Loops and parallel edges are dropped.
    """
    sm = _mask_arg(g, s)
    if not sm:
        raise InputError("cannot contract an empty vertex set")
    keep = [v for v in range(g.n) if not sm >> v & 1]
    fat = len(keep)
    mapping = {v: i for i, v in enumerate(keep)}
    for v in iter_bits(sm):
        mapping[v] = fat
    edges = set()
    for u, v in g.edges():
        a, b = mapping[u], mapping[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Contraction(Graph(fat + 1, sorted(edges)), fat, mapping)


def identify(g: Graph, u: int, v: int) -> Contraction:
    """Contract the nonadjacent pair ``{u, v}``."""
    if u == v:
        raise InputError("identify needs two distinct vertices")
    if g.has_edge(u, v):
        raise InputError(f"cannot identify adjacent vertices {u} and {v}")
    return contract(g, (u, v))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if u == v:
        raise InputError("cannot add a loop")
    if g.has_edge(u, v):
        raise InputError(f"edge ({u}, {v}) already present")
    masks = list(g.masks)
    masks[u] |= 1 << v
    masks[v] |= 1 << u
    return Graph._trusted(tuple(masks))


def add_edges(g: Graph, edges) -> Graph:
    for u, v in edges:
        g = add_edge(g, u, v)
    return g


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise InputError(f"edge ({u}, {v}) not present")
    masks = list(g.masks)
    masks[u] &= ~(1 << v)
    masks[v] &= ~(1 << u)
    return Graph._trusted(tuple(masks))


def induced_subgraph(g: Graph, keep) -> tuple[Graph, dict]:
    """Subgraph induced by ``keep``, relabelled in increasing order.

    Returns the subgraph and the old -> new vertex map.
    """
    km = _mask_arg(g, keep)
    order = list(iter_bits(km))
    mapping = {v: i for i, v in enumerate(order)}
    edges = [(mapping[u], mapping[v]) for u, v in g.edges() if km >> u & 1 and km >> v & 1]
    return Graph(len(order), edges), mapping


def delete_vertices(g: Graph, drop) -> tuple[Graph, dict]:
    dm = _mask_arg(g, drop)
    return induced_subgraph(g, g.all_mask & ~dm)


def relabel(g: Graph, perm) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    perm = list(perm)
    if sorted(perm) != list(range(g.n)):
        raise InputError("relabel needs a permutation of the vertex range")
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
