"""Isomorph-free generation of small graphs by canonical augmentation.

Graphs on ``n`` vertices are grown from the accepted graphs on ``n - 1``
vertices by adding one vertex joined to a neighbourhood set. A child is
kept only when the added vertex lies in the orbit of the child's canonical
deletion vertex: among the deletable vertices (non-cut vertices when only
connected graphs are wanted), those with the largest local invariant, and
among them the one placed last by the canonical labelling. Children of one
parent that coincide up to isomorphism are merged by canonical key.
"""
from __future__ import annotations

import os
from collections.abc import Iterator
from dataclasses import dataclass
from itertools import combinations

from .canon import canonical_labeling
from .errors import InputError, ResourceError
from .graph import MAX_VERTICES, Graph, cut_vertices, iter_bits


@dataclass(frozen=True)
class EnumerationSpec:
    max_n: int
    max_degree: int = 4
    forbid_clique: int = 4  # K_forbid_clique-free; 0 disables the bound
    connected_only: bool = True

    def __post_init__(self):
        if not 1 <= self.max_n <= MAX_VERTICES:
            raise InputError(f"max_n must be in 1..{MAX_VERTICES}, got {self.max_n}")
        if self.max_degree < 1:
            raise InputError(f"max_degree must be >= 1, got {self.max_degree}")
        if self.forbid_clique == 1 or self.forbid_clique < 0:
            raise InputError(f"forbid_clique must be 0 or >= 2, got {self.forbid_clique}")


def _has_clique(masks, s: int, k: int) -> bool:
    """Does the vertex set ``s`` contain a clique on ``k`` vertices?"""
    if k <= 0:
        return True
    if s.bit_count() < k:
        return False
    for v in iter_bits(s):
        s &= ~(1 << v)
        if _has_clique(masks, s & masks[v], k - 1):
            return True
    return False


def _local_invariant(masks, v):
    nd = sorted((masks[u].bit_count() for u in iter_bits(masks[v])), reverse=True)
    return (masks[v].bit_count(), tuple(nd))


def _accept(child: Graph, spec: EnumerationSpec):
    """Return the canonical key if the last vertex is a canonical deletion,
    else ``None``."""
    masks = child.masks
    t = child.n - 1
    if spec.connected_only:
        cuts = cut_vertices(child)
        cands = [v for v in range(child.n) if v not in cuts]
    else:
        cands = list(range(child.n))
    if t not in cands:
        return None
    inv = {v: _local_invariant(masks, v) for v in cands}
    top = max(inv.values())
    if inv[t] != top:
        return None
    cands = [v for v in cands if inv[v] == top]
    can = canonical_labeling(child)
    if len(cands) > 1:
        labels = can.labels
        chosen = max(cands, key=lambda v: labels[v])
        if can.orbits[chosen] != can.orbits[t]:
            return None
    return can.key


def _children(parent: Graph, spec: EnumerationSpec) -> Iterator[Graph]:
    n = parent.n
    masks = parent.masks
    eligible = [v for v in range(n) if masks[v].bit_count() < spec.max_degree]
    lo = 1 if spec.connected_only else 0
    for size in range(lo, min(spec.max_degree, len(eligible)) + 1):
        for combo in combinations(eligible, size):
            s = 0
            for v in combo:
                s |= 1 << v
            if spec.forbid_clique and _has_clique(masks, s, spec.forbid_clique - 1):
                continue
            new = list(masks)
            for v in combo:
                new[v] |= 1 << n
            new.append(s)
            yield Graph._trusted(tuple(new))


def enumerate_by_order(spec: EnumerationSpec, limit: int | None = None) -> Iterator[list[Graph]]:
    """Yield, for ``n = 1..max_n``, the list of representatives on ``n`` vertices."""
    if limit is None:
        env = os.environ.get("FRACGRAPH_NODE_BUDGET")
        limit = int(env) if env else None
    level = [Graph(1)]
    yield level
    produced = 1
    for _ in range(2, spec.max_n + 1):
        nxt = []
        for parent in level:
            seen = set()
            for child in _children(parent, spec):
                key = _accept(child, spec)
                if key is None or key in seen:
                    continue
                seen.add(key)
                nxt.append(child)
                produced += 1
                if limit is not None and produced > limit:
                    raise ResourceError(
                        f"enumeration produced more than {limit} graphs", limit=limit
                    )
        level = nxt
        yield level


def enumerate_graphs(spec: EnumerationSpec, limit: int | None = None) -> Iterator[Graph]:
    """Every graph of the class up to ``max_n`` vertices, one per
    isomorphism class, in order of vertex count."""
    for level in enumerate_by_order(spec, limit):
        yield from level
