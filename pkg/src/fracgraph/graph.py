"""Immutable simple graphs on vertices ``0..n-1`` with structural queries.

Adjacency is stored as one integer bitmask per vertex, so vertex sets are
word-sized and set algebra is constant time for the sizes this package
targets. Public functions accept any iterable of vertices and return
``frozenset`` values; the ``*_mask`` helpers expose the raw bitmasks for
the inner loops of the LP and search code.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator

from .errors import InputError, ResourceError

MAX_VERTICES = 64

VertexSet = frozenset


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset:
    return frozenset(iter_bits(mask))


class Graph:
    """A simple undirected graph with vertices labelled ``0..n-1``.

    Instances are immutable and hashable; equality is labelled equality
    (use :func:`fracgraph.canon.is_isomorphic` for isomorphism).
    """

    __slots__ = ("_n", "_masks", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be nonnegative, got {n}")
        if n > MAX_VERTICES:
            raise ResourceError(
                f"graph has {n} vertices, size cap is {MAX_VERTICES}", limit=MAX_VERTICES
            )
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._n = n
        self._masks = tuple(masks)
        self._hash = None

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> Graph:
        """Build from per-vertex neighbor bitmasks; symmetry is checked."""
        masks = tuple(masks)
        n = len(masks)
        if n > MAX_VERTICES:
            raise ResourceError(
                f"graph has {n} vertices, size cap is {MAX_VERTICES}", limit=MAX_VERTICES
            )
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m & ~full:
                raise InputError(f"vertex {v} lists a neighbor >= {n}")
            if m >> v & 1:
                raise InputError(f"loop at vertex {v}")
            for u in iter_bits(m):
                if not masks[u] >> v & 1:
                    raise InputError(f"adjacency not symmetric at ({v}, {u})")
        g = cls.__new__(cls)
        g._n = n
        g._masks = masks
        g._hash = None
        return g

    @classmethod
    def _trusted(cls, masks: tuple[int, ...]) -> Graph:
        g = cls.__new__(cls)
        g._n = len(masks)
        g._masks = masks
        g._hash = None
        return g

    @property
    def n(self) -> int:
        return self._n

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def all_mask(self) -> int:
        return (1 << self._n) - 1

    def _check(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self._n):
            raise InputError(f"vertex {v!r} out of range for n={self._n}")

    def adj(self, v: int) -> frozenset:
        self._check(v)
        return from_mask(self._masks[v])

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self._masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        self._check(v)
        return self._masks[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self._masks]

    @property
    def max_degree(self) -> int:
        return max((m.bit_count() for m in self._masks), default=0)

    @property
    def min_degree(self) -> int:
        return min((m.bit_count() for m in self._masks), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, m in enumerate(self._masks):
            for v in iter_bits(m >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self._masks) // 2

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._masks == other._masks

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._masks)
        return self._hash

    def __repr__(self):
        return f"Graph(n={self._n}, edges={self.edges()})"


def _mask_arg(g: Graph, s) -> int:
    if isinstance(s, int):
        mask = s
    else:
        mask = 0
        for v in s:
            g._check(v)
            mask |= 1 << v
    if mask & ~g.all_mask:
        raise InputError("vertex set exceeds the graph's vertex range")
    return mask


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def distance_layers_mask(g: Graph, v: int) -> list[int]:
    """BFS layers from ``v`` as bitmasks; layer 0 is ``{v}``."""
    g._check(v)
    masks = g.masks
    seen = 1 << v
    frontier = seen
    layers = [frontier]
    while True:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= masks[u]
        nxt &= ~seen
        if not nxt:
            return layers
        seen |= nxt
        layers.append(nxt)
        frontier = nxt


def distance_layer(g: Graph, v: int, j: int) -> frozenset:
    """Vertices at shortest-path distance exactly ``j`` from ``v``."""
    if j < 1:
        raise InputError(f"layer index must be positive, got {j}")
    layers = distance_layers_mask(g, v)
    return from_mask(layers[j]) if j < len(layers) else frozenset()


def edges_between(g: Graph, s, t) -> int:
    """Number of edges with one end in ``s`` and the other in ``t``."""
    sm, tm = _mask_arg(g, s), _mask_arg(g, t)
    if sm & tm:
        raise InputError("edges_between requires disjoint vertex sets")
    masks = g.masks
    return sum((masks[u] & tm).bit_count() for u in iter_bits(sm))


def components_mask(g: Graph) -> list[int]:
    masks = g.masks
    left = g.all_mask
    comps = []
    while left:
        low = left & -left
        seen = low
        frontier = low
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= masks[u]
            frontier = nxt & ~seen
            seen |= frontier
        comps.append(seen)
        left &= ~seen
    return comps


def is_connected(g: Graph) -> bool:
    """The empty graph counts as connected."""
    return len(components_mask(g)) <= 1


def cut_vertices(g: Graph) -> frozenset:
    """Articulation points, by the iterative Hopcroft-Tarjan lowpoint scheme."""
    n = g.n
    masks = g.masks
    disc = [-1] * n
    low = [0] * n
    cuts = set()
    clock = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack = [(root, -1, iter(list(iter_bits(masks[root]))))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    disc[w] = low[w] = clock
                    clock += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(list(iter_bits(masks[w])))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    return frozenset(cuts)


def is_two_connected(g: Graph) -> bool:
    return g.n >= 3 and is_connected(g) and not cut_vertices(g)


def is_independent(g: Graph, s) -> bool:
    sm = _mask_arg(g, s)
    masks = g.masks
    return all(not (masks[u] & sm) for u in iter_bits(sm))


def is_clique(g: Graph, s) -> bool:
    sm = _mask_arg(g, s)
    masks = g.masks
    return all((masks[u] | 1 << u) & sm == sm for u in iter_bits(sm))


def _max_clique_mask(masks: tuple[int, ...], candidates: int) -> int:
    """Maximum clique inside ``candidates`` by branch and bound.

    The bound is a greedy coloring of the candidate set; vertices are
    branched on in lowest-index-first order within each color class.
    """
    best = 0
    best_size = 0

    def color_bound(p: int) -> list[tuple[int, int]]:
        # returns (vertex, color count so far) in coloring order
        order = []
        k = 0
        uncolored = p
        while uncolored:
            k += 1
            q = uncolored
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~masks[v] & ~low
                uncolored &= ~low
                order.append((v, k))
        return order

    def expand(current: int, size: int, p: int) -> None:
        nonlocal best, best_size
        order = color_bound(p)
        for v, k in reversed(order):
            if size + k <= best_size:
                return
            newp = p & masks[v]
            cur = current | 1 << v
            if newp:
                expand(cur, size + 1, newp)
            elif size + 1 > best_size:
                best, best_size = cur, size + 1
            p &= ~(1 << v)

    if candidates:
        expand(0, 0, candidates)
    return best


def complement_masks(g: Graph) -> tuple[int, ...]:
    full = g.all_mask
    return tuple(full & ~m & ~(1 << v) for v, m in enumerate(g.masks))


def maximum_independent_set(g: Graph) -> frozenset:
    return from_mask(_max_clique_mask(complement_masks(g), g.all_mask))


def independence_number(g: Graph) -> int:
    return _max_clique_mask(complement_masks(g), g.all_mask).bit_count()


def maximum_clique(g: Graph) -> frozenset:
    return from_mask(_max_clique_mask(g.masks, g.all_mask))


def clique_number(g: Graph) -> int:
    return _max_clique_mask(g.masks, g.all_mask).bit_count()


def is_clique_free(g: Graph, k: int) -> bool:
    """True iff ``g`` has no clique on ``k`` vertices."""
    return clique_number(g) < k


def maximal_independent_set_masks(g: Graph, limit: int | None = None) -> list[int]:
    """All inclusion-maximal independent sets as bitmasks, sorted ascending
    by their sorted vertex tuples.

    Bron-Kerbosch with Tomita pivoting on the complement graph.
    """
    comp = complement_masks(g)
    out: list[int] = []
    if g.n == 0:
        return [0]

    def bk(r: int, p: int, x: int) -> None:
        if not p:
            if not x:
                out.append(r)
                if limit is not None and len(out) > limit:
                    raise ResourceError(
                        f"more than {limit} maximal independent sets (limit={limit})",
                        limit=limit,
                    )
            return
        # pivot maximizing |P ∩ N(u)|, lowest index on ties
        px = p | x
        best_u, best_c = -1, -1
        for u in iter_bits(px):
            c = (p & comp[u]).bit_count()
            if c > best_c:
                best_u, best_c = u, c
        for v in iter_bits(p & ~comp[best_u]):
            bk(r | 1 << v, p & comp[v], x & comp[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk(0, g.all_mask, 0)
    out.sort(key=lambda m: tuple(iter_bits(m)))
    return out


def enumerate_maximal_independent_sets(g: Graph, limit: int | None = None) -> list[frozenset]:
    return [from_mask(m) for m in maximal_independent_set_masks(g, limit)]
