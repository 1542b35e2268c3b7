"""Weighted undirected graphs, cut evaluation, and classical ground-truth solvers.

Vertices are integers ``0..num_vertices-1``. Edge weights are nonnegative
integers; all cut values are therefore exact integers, which the quantum
fitness register and the meta-graph contraction both rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import CapacityError
from .rng import make_rng

BRUTE_FORCE_VERTEX_LIMIT = 24
_BRUTE_CHUNK = 1 << 20


@dataclass(frozen=True)
class Graph:
    """Immutable weighted undirected graph without self-loops or duplicate edges."""

    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        n = self.num_vertices
        if n < 1:
            raise ValueError(f"num_vertices must be >= 1, got {n}")
        clean = []
        seen = set()
        for e in self.edges:
            if len(e) != 3:
                raise ValueError(f"edge must be (u, v, w), got {e!r}")
            u, v, w = (int(x) for x in e)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if w < 0:
                raise ValueError(f"negative weight {w} on edge ({u}, {v})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            clean.append((u, v, w))
        object.__setattr__(self, "edges", tuple(clean))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    @cached_property
    def _edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not self.edges:
            z = np.zeros(0, dtype=np.int64)
            return z, z.copy(), z.copy()
        u, v, w = (np.array(col, dtype=np.int64) for col in zip(*self.edges))
        return u, v, w


@dataclass(frozen=True)
class CutAssignment:
    """Bit vector over vertices; bit i = 1 puts vertex i in subset S."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("assignment bits must be 0 or 1")
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))

    @classmethod
    def from_int(cls, value: int, num_vertices: int) -> "CutAssignment":
        return cls(tuple((value >> i) & 1 for i in range(num_vertices)))

    @classmethod
    def zeros(cls, num_vertices: int) -> "CutAssignment":
        return cls((0,) * num_vertices)

    def to_int(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    def complement(self) -> "CutAssignment":
        return CutAssignment(tuple(1 - b for b in self.bits))

    def to_string(self) -> str:
        """Vertex-order bitstring (vertex 0 first)."""
        return "".join(str(b) for b in self.bits)

    def __len__(self) -> int:
        return len(self.bits)


def generate_complete(n: int, w: int = 1) -> Graph:
    """Complete graph K_n with uniform integer weight w on every edge."""
    if n < 1:
        raise ValueError(f"vertex count must be >= 1, got {n}")
    if w < 1:
        raise ValueError(f"weight must be >= 1, got {w}")
    edges = tuple((u, v, w) for u in range(n) for v in range(u + 1, n))
    return Graph(n, edges)


def generate_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p) with unit weights; each pair kept independently with probability p.

    Deterministic for a fixed seed: pairs are visited in row-major order
    (0,1), (0,2), ... and accepted against one Philox draw each.
    """
    if n < 1:
        raise ValueError(f"vertex count must be >= 1, got {n}")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    uu, vv = np.triu_indices(n, k=1)
    keep = make_rng(seed).random(len(uu)) < p
    edges = tuple((int(u), int(v), 1) for u, v in zip(uu[keep], vv[keep]))
    return Graph(n, edges)


def cut_value(g: Graph, a: CutAssignment) -> int:
    """Total weight of edges whose endpoints carry different bits."""
    if len(a) != g.num_vertices:
        raise ValueError(
            f"assignment length {len(a)} != num_vertices {g.num_vertices}"
        )
    if not g.edges:
        return 0
    u, v, w = g._edge_arrays
    bits = np.asarray(a.bits, dtype=np.int64)
    return int(w[bits[u] != bits[v]].sum())


def cut_values_for_ints(g: Graph, xs: np.ndarray) -> np.ndarray:
    """Cut values for integer-encoded assignments (bit i of x = vertex i)."""
    vals = np.zeros(len(xs), dtype=np.int64)
    for u, v, w in g.edges:
        vals += w * (((xs >> u) ^ (xs >> v)) & 1)
    return vals


def complete_graph_optimum(n: int, w: int = 1) -> int:
    """Analytic MaxCut of K_n with uniform weight w: floor(n^2 w / 4)."""
    if n < 1:
        raise ValueError(f"vertex count must be >= 1, got {n}")
    return (n * n * w) // 4


def lower_bound(g: Graph) -> Fraction:
    """Half the total edge weight, the random-cut expectation, as an exact rational."""
    return Fraction(g.total_weight, 2)


def brute_force_maxcut(g: Graph) -> tuple[CutAssignment, int]:
    """Exact optimum by enumeration with vertex 0 pinned to subset T.

    Pinning halves the search space (complementing an assignment preserves
    its value). Ties break toward the lowest integer-encoded assignment
    among the enumerated half-space.
    """
    n = g.num_vertices
    if n > BRUTE_FORCE_VERTEX_LIMIT:
        raise CapacityError("brute-force vertex count", n, BRUTE_FORCE_VERTEX_LIMIT)
    if n == 1:
        return CutAssignment.zeros(1), 0
    total = 1 << (n - 1)
    best_val = -1
    best_x = 0
    for lo in range(0, total, _BRUTE_CHUNK):
        xs = np.arange(lo, min(lo + _BRUTE_CHUNK, total), dtype=np.int64) << 1
        vals = cut_values_for_ints(g, xs)
        i = int(np.argmax(vals))
        if int(vals[i]) > best_val:
            best_val = int(vals[i])
            best_x = int(xs[i])
    return CutAssignment.from_int(best_x, n), best_val


def random_cut_baseline(g: Graph, trials: int, seed: int) -> tuple[CutAssignment, int]:
    """Best cut over `trials` uniformly random assignments; deterministic per seed."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    n = g.num_vertices
    bits = make_rng(seed).integers(0, 2, size=(trials, n), dtype=np.int64)
    if not g.edges:
        return CutAssignment(tuple(bits[0])), 0
    u, v, w = g._edge_arrays
    vals = (bits[:, u] != bits[:, v]) @ w
    i = int(np.argmax(vals))
    return CutAssignment(tuple(int(b) for b in bits[i])), int(vals[i])


def local_search_improve(g: Graph, a: CutAssignment) -> CutAssignment:
    """Greedy single-vertex flips, largest positive gain first, to a local optimum."""
    if len(a) != g.num_vertices:
        raise ValueError(
            f"assignment length {len(a)} != num_vertices {g.num_vertices}"
        )
    bits = list(a.bits)
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(g.num_vertices)]
    for u, v, w in g.edges:
        adjacency[u].append((v, w))
        adjacency[v].append((u, w))
    while True:
        best_gain = 0
        best_vertex = -1
        for vtx in range(g.num_vertices):
            # flipping vtx cuts its currently-uncut incident edges and vice versa
            gain = sum(w if bits[vtx] == bits[o] else -w for o, w in adjacency[vtx])
            if gain > best_gain:
                best_gain = gain
                best_vertex = vtx
        if best_vertex < 0:
            return CutAssignment(tuple(bits))
        bits[best_vertex] ^= 1


def format_edge_list(g: Graph) -> str:
    """Serialize to the `maxcut` edge-list text format."""
    lines = [f"maxcut {g.num_vertices} {g.num_edges}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the `maxcut` edge-list text format.

    First significant line: ``maxcut <num_vertices> <num_edges>``; then one
    ``u v [w]`` line per edge (w defaults to 1). Lines starting with ``#``
    are comments. Duplicate edges are rejected, not merged.
    """
    header = None
    edges: list[tuple[int, int, int]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "maxcut":
                raise ValueError(f"bad header line: {raw!r}")
            header = (int(parts[1]), int(parts[2]))
            continue
        parts = line.split()
        if len(parts) == 2:
            u, v, w = int(parts[0]), int(parts[1]), 1
        elif len(parts) == 3:
            u, v, w = int(parts[0]), int(parts[1]), int(parts[2])
        else:
            raise ValueError(f"bad edge line: {raw!r}")
        edges.append((u, v, w))
    if header is None:
        raise ValueError("missing 'maxcut <n> <m>' header")
    n, m = header
    if len(edges) != m:
        raise ValueError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


def load_graph(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def save_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))
