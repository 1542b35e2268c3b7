"""Recursive balanced bisection with greedy swap refinement.

Splits the vertex set into two near-equal halves, improves the split by
repeatedly applying the best boundary-weight-reducing vertex swap (a fixed
number of sweeps), and recurses on any half still larger than the size
limit. Deterministic for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph
from .rng import make_rng

REFINE_SWEEPS = 8

_STREAM_BISECT = 31


@dataclass(frozen=True)
class Partition:
    """Disjoint vertex parts covering the graph, with edges classified."""

    parts: tuple[tuple[int, ...], ...]
    internal_edges: tuple[tuple[tuple[int, int, int], ...], ...]
    boundary_edges: tuple[tuple[int, int, int, int, int], ...]  # (u, v, w, part_u, part_v)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def part_of(self) -> dict[int, int]:
        return {v: i for i, part in enumerate(self.parts) for v in part}


def _bisect(vertices: list[int], edges, seed: int, tag: int) -> tuple[list[int], list[int]]:
    rng = make_rng(seed, _STREAM_BISECT, tag)
    order = [vertices[i] for i in rng.permutation(len(vertices))]
    half = (len(order) + 1) // 2
    side_a, side_b = set(order[:half]), set(order[half:])

    local = [(u, v, w) for u, v, w in edges
             if (u in side_a or u in side_b) and (v in side_a or v in side_b)]
    # weight from each vertex into each side; swaps update incrementally
    to_a = {v: 0 for v in vertices}
    to_b = {v: 0 for v in vertices}
    for u, v, w in local:
        if v in side_a:
            to_a[u] += w
        else:
            to_b[u] += w
        if u in side_a:
            to_a[v] += w
        else:
            to_b[v] += w
    weight = {}
    for u, v, w in local:
        weight[(u, v)] = weight.get((u, v), 0) + w
        weight[(v, u)] = weight.get((v, u), 0) + w

    for _ in range(REFINE_SWEEPS):
        best_gain = 0
        best_pair = None
        for a in sorted(side_a):
            gain_a = to_b[a] - to_a[a]  # boundary drop if a moves out of A
            for b in sorted(side_b):
                gain = gain_a + (to_a[b] - to_b[b]) - 2 * weight.get((a, b), 0)
                if gain > best_gain:
                    best_gain = gain
                    best_pair = (a, b)
        if best_pair is None:
            break
        a, b = best_pair
        side_a.remove(a)
        side_b.add(a)
        side_b.remove(b)
        side_a.add(b)
        for u, v, w in local:
            for moved, into_a in ((a, False), (b, True)):
                if u == moved:
                    other = v
                elif v == moved:
                    other = u
                else:
                    continue
                if into_a:
                    to_a[other] += w
                    to_b[other] -= w
                else:
                    to_a[other] -= w
                    to_b[other] += w
    return sorted(side_a), sorted(side_b)


def partition_graph(g: Graph, max_size: int, seed: int = 0) -> Partition:
    """Partition into parts of at most `max_size` vertices."""
    if max_size < 2:
        raise ValueError(f"max_size must be >= 2, got {max_size}")
    final_parts: list[list[int]] = []
    queue: list[tuple[list[int], int]] = [(list(range(g.num_vertices)), 1)]
    while queue:
        vertices, tag = queue.pop(0)
        if len(vertices) <= max_size:
            final_parts.append(vertices)
            continue
        side_a, side_b = _bisect(vertices, g.edges, seed, tag)
        queue.append((side_a, 2 * tag))
        queue.append((side_b, 2 * tag + 1))

    owner = {v: i for i, part in enumerate(final_parts) for v in part}
    internal: list[list[tuple[int, int, int]]] = [[] for _ in final_parts]
    boundary: list[tuple[int, int, int, int, int]] = []
    for u, v, w in g.edges:
        pu, pv = owner[u], owner[v]
        if pu == pv:
            internal[pu].append((u, v, w))
        else:
            boundary.append((u, v, w, pu, pv))
    return Partition(
        parts=tuple(tuple(p) for p in final_parts),
        internal_edges=tuple(tuple(e) for e in internal),
        boundary_edges=tuple(boundary),
    )
