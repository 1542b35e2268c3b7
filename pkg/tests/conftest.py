"""Shared independent oracles for the test suite.

These deliberately avoid the package's own vectorized code paths: cuts are
counted with plain Python loops and the exhaustive solver scans all 2^V
assignments without the complement-symmetry shortcut, so they can serve as
ground truth for the library implementations.
"""

from __future__ import annotations

import numpy as np

from grovercut.graphs import Graph


def naive_cut(g: Graph, bits) -> int:
    total = 0
    for u, v, w in g.edges:
        if bits[u] != bits[v]:
            total += w
    return total


def full_scan_maxcut(g: Graph) -> tuple[int, int]:
    """(best assignment int, best value) over every one of the 2^V assignments."""
    n = g.num_vertices
    best_x, best_val = 0, -1
    for x in range(1 << n):
        bits = [(x >> i) & 1 for i in range(n)]
        val = naive_cut(g, bits)
        if val > best_val:
            best_x, best_val = x, val
    return best_x, best_val


def cut_counts_by_assignment(g: Graph) -> list[int]:
    """Cut value for every integer-encoded assignment, naive loop."""
    n = g.num_vertices
    return [naive_cut(g, [(x >> i) & 1 for i in range(n)]) for x in range(1 << n)]


def basis_index_of(state) -> int:
    """Index of the single basis state carrying all the amplitude."""
    amps = state.amplitudes
    idx = int(np.argmax(np.abs(amps)))
    assert abs(abs(amps[idx]) - 1.0) < 1e-9, "state is not a basis state"
    return idx
