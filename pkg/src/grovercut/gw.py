"""Low-rank relaxation baseline with randomized hyperplane rounding.

This is a "GW-style" baseline, not an exact semidefinite solve: each vertex
gets a unit vector of small rank and projected gradient ascent maximizes
sum w_ij (1 - <v_i, v_j>) / 2 over the product of spheres. Cuts are then
read off by signing each vertex against random hyperplanes and keeping the
best. The 0.878 expectation guarantee of the exact relaxation is targeted
empirically, not proven, for this variant.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .graphs import CutAssignment, Graph
from .reports import RunReport, build_report
from .rng import make_rng

_STREAM_INIT = 11
_STREAM_ROUND = 12


@dataclass(frozen=True)
class GwConfig:
    seed: int = 0
    rank: int | None = None  # None: ceil(sqrt(2 |V|)), floored at 2
    max_iters: int = 2000
    tol: float = 1e-7
    step: float = 0.1
    step_floor: float = 1e-6
    trials: int = 64


@dataclass(frozen=True)
class VectorEmbedding:
    """Unit vectors per vertex plus the relaxation objective they achieve."""

    vectors: np.ndarray  # shape (num_vertices, rank), rows unit norm
    objective: float
    history: tuple[float, ...] = ()  # accepted objective values, non-decreasing


def default_rank(num_vertices: int) -> int:
    return max(2, math.ceil(math.sqrt(2.0 * num_vertices)))


def _normalize_rows(m: np.ndarray, rng_fallback) -> np.ndarray:
    norms = np.linalg.norm(m, axis=1)
    dead = norms < 1e-300
    if dead.any():
        m[dead] = rng_fallback.standard_normal((int(dead.sum()), m.shape[1]))
        norms = np.linalg.norm(m, axis=1)
    return m / norms[:, None]


def _objective(g: Graph, vectors: np.ndarray) -> float:
    if not g.edges:
        return 0.0
    u, v, w = g._edge_arrays
    dots = np.einsum("ij,ij->i", vectors[u], vectors[v])
    return float(np.dot(w, 1.0 - dots) / 2.0)


def solve_relaxation(
    g: Graph, rank: int, max_iters: int = 2000, tol: float = 1e-7, seed: int = 0,
    step: float = 0.1, step_floor: float = 1e-6,
) -> VectorEmbedding:
    """Projected gradient ascent on the unit-vector relaxation.

    Steps that would decrease the objective are rejected and the step size
    halves (down to `step_floor`), so the accepted objective sequence is
    non-decreasing. Stops on relative improvement below `tol` or after
    `max_iters` attempts. Deterministic per seed.
    """
    if rank < 2:
        raise ValueError(f"rank must be >= 2, got {rank}")
    n = g.num_vertices
    rng = make_rng(seed, _STREAM_INIT)
    vectors = _normalize_rows(rng.standard_normal((n, rank)), rng)
    current = _objective(g, vectors)
    history = [current]
    if not g.edges:
        return VectorEmbedding(vectors, current, tuple(history))

    adjacency = np.zeros((n, n))
    for u, v, w in g.edges:
        adjacency[u, v] += w
        adjacency[v, u] += w

    for _ in range(max_iters):
        gradient = -0.5 * (adjacency @ vectors)
        candidate = _normalize_rows(vectors + step * gradient, rng)
        value = _objective(g, candidate)
        if value < current:
            step *= 0.5
            if step < step_floor:
                break
            continue
        improvement = value - current
        vectors, current = candidate, value
        history.append(current)
        if improvement < tol * max(1.0, abs(current)):
            break
    return VectorEmbedding(vectors, current, tuple(history))


def hyperplane_round(
    e: VectorEmbedding, g: Graph, trials: int, seed: int
) -> tuple[CutAssignment, int]:
    """Best cut over `trials` random hyperplanes; deterministic per seed.

    Trial t signs every vertex vector against the t-th Gaussian normal; ties
    between equal-value trials break toward the first found.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rank = e.vectors.shape[1]
    normals = make_rng(seed, _STREAM_ROUND).standard_normal((trials, rank))
    bits = (normals @ e.vectors.T) > 0.0  # (trials, |V|)
    if not g.edges:
        return CutAssignment(tuple(int(b) for b in bits[0])), 0
    u, v, w = g._edge_arrays
    values = (bits[:, u] != bits[:, v]) @ w
    i = int(np.argmax(values))
    return CutAssignment(tuple(int(b) for b in bits[i])), int(values[i])


def rounding_values(e: VectorEmbedding, g: Graph, trials: int, seed: int) -> np.ndarray:
    """Per-trial cut values for the same hyperplane stream as hyperplane_round."""
    rank = e.vectors.shape[1]
    normals = make_rng(seed, _STREAM_ROUND).standard_normal((trials, rank))
    bits = (normals @ e.vectors.T) > 0.0
    if not g.edges:
        return np.zeros(trials, dtype=np.int64)
    u, v, w = g._edge_arrays
    return (bits[:, u] != bits[:, v]) @ w


def gw_maxcut(g: Graph, cfg: GwConfig | None = None) -> RunReport:
    """Relax, round, and report the best cut found."""
    cfg = cfg or GwConfig()
    start = time.perf_counter()
    rank = cfg.rank if cfg.rank is not None else default_rank(g.num_vertices)
    embedding = solve_relaxation(
        g, rank, max_iters=cfg.max_iters, tol=cfg.tol, seed=cfg.seed,
        step=cfg.step, step_floor=cfg.step_floor,
    )
    assignment, _ = hyperplane_round(embedding, g, cfg.trials, cfg.seed)
    return build_report(
        g,
        "gw",
        assignment,
        oracle_calls=len(embedding.history),
        measurements=cfg.trials,
        qubits_used=0,
        seed=cfg.seed,
        wall_ms=int(1000 * (time.perf_counter() - start)),
        details={"relaxation_objective": embedding.objective, "rank": rank},
    )
