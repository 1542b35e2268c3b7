"""Divide-and-conquer driver: partition, solve parts, contract, merge.

Boundary edges between parts are folded into a meta-problem over one
flip bit per part. For parts i and j, ``c_same`` collects the boundary
weight already cut by the local solutions (earned when the parts keep the
same orientation) and ``c_diff`` the weight cut only if exactly one part
flips. Each part's solution and its complement score identically inside
the part, so flipping is free locally and the meta-objective

    sum(local values) + sum over pairs (s_i == s_j ? c_same : c_diff)

is exactly the global cut of the assembled assignment. Two nonnegative
coefficients per pair, rather than one signed weight, keep the meta
fitness an unsigned integer that the quantum fitness register can hold.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import CapacityError
from .graphs import (
    CutAssignment,
    Graph,
    cut_value,
    local_search_improve,
)
from .partition import Partition, partition_graph
from .qga import (
    PairTerm,
    QgaConfig,
    _layout_for,
    _max_objective,
    maximize_pair_objective,
    run_qga_maxcut,
)
from .reports import RunReport, build_report
from .rng import derive_seed
from .statevector import DEFAULT_QUBIT_CAP

_STREAM_PART = 41
_STREAM_META = 42
_STREAM_SPLIT = 43


@dataclass(frozen=True)
class DncConfig:
    seed: int = 0
    max_part_size: int = 8
    meta_brute_limit: int = 20
    polish: bool = False
    qubit_cap: int = DEFAULT_QUBIT_CAP
    qga: QgaConfig = field(default_factory=QgaConfig)

    def __post_init__(self):
        if self.max_part_size < 2:
            raise ValueError("max_part_size must be >= 2")
        if self.meta_brute_limit < 0:
            raise ValueError("meta_brute_limit must be >= 0")


@dataclass(frozen=True)
class MetaGraph:
    """Contracted problem: one node per part, two coefficients per pair."""

    num_parts: int
    pairs: tuple[tuple[int, int, int, int], ...]  # (i, j, c_same, c_diff), i < j
    local_solutions: tuple[CutAssignment, ...]
    local_values: tuple[int, ...]

    def objective(self, flips: tuple[int, ...]) -> int:
        """Global cut value achieved by flipping each part per `flips`."""
        total = sum(self.local_values)
        for i, j, c_same, c_diff in self.pairs:
            total += c_same if flips[i] == flips[j] else c_diff
        return total


def _qga_config(cfg: DncConfig, *stream: int) -> QgaConfig:
    return replace(
        cfg.qga,
        seed=derive_seed(cfg.seed, *stream),
        qubit_cap=cfg.qubit_cap,
    )


def induced_subgraph_from_part(p: Partition, part_index: int) -> Graph:
    """Local-label subgraph of one part (internal edges only)."""
    part = p.parts[part_index]
    index = {v: i for i, v in enumerate(part)}
    edges = tuple((index[u], index[v], w) for u, v, w in p.internal_edges[part_index])
    return Graph(max(1, len(part)), edges)


def _solve_part_full(sub: Graph, cfg: QgaConfig):
    if sub.num_vertices <= 2 or sub.total_weight == 0:
        if sub.total_weight > 0:
            # two vertices with an edge: put them on opposite sides
            assignment = CutAssignment((0, 1))
        else:
            assignment = CutAssignment.zeros(sub.num_vertices)
        return assignment, cut_value(sub, assignment), None
    report = run_qga_maxcut(sub, cfg)
    return report.assignment, report.best_value, report


def solve_part(sub: Graph, cfg: QgaConfig) -> tuple[CutAssignment, int]:
    """Best cut of one induced subgraph; tiny or edgeless parts skip the circuits."""
    assignment, value, _ = _solve_part_full(sub, cfg)
    return assignment, value


def contract(p: Partition, solutions: list[CutAssignment]) -> MetaGraph:
    """Fold boundary edges into per-pair coefficients under the local solutions."""
    if len(solutions) != p.num_parts:
        raise ValueError(
            f"need one solution per part: {p.num_parts} parts, {len(solutions)} solutions"
        )
    position: dict[int, tuple[int, int]] = {}
    for part_index, part in enumerate(p.parts):
        if len(solutions[part_index]) != len(part):
            raise ValueError(f"solution {part_index} does not match its part size")
        for offset, v in enumerate(part):
            position[v] = (part_index, offset)

    coeffs: dict[tuple[int, int], list[int]] = {}
    for u, v, w, pu, pv in p.boundary_edges:
        i, j = min(pu, pv), max(pu, pv)
        bit_u = solutions[pu].bits[position[u][1]]
        bit_v = solutions[pv].bits[position[v][1]]
        entry = coeffs.setdefault((i, j), [0, 0])
        if bit_u != bit_v:
            entry[0] += w  # cut while orientations agree
        else:
            entry[1] += w  # cut only if exactly one part flips

    local_values = tuple(
        cut_value(induced_subgraph_from_part(p, i), solutions[i])
        for i in range(p.num_parts)
    )
    pairs = tuple(
        (i, j, c_same, c_diff)
        for (i, j), (c_same, c_diff) in sorted(coeffs.items())
    )
    return MetaGraph(
        num_parts=p.num_parts,
        pairs=pairs,
        local_solutions=tuple(solutions),
        local_values=local_values,
    )


def _enumerate_flips(terms: tuple[PairTerm, ...], n: int) -> tuple[int, int]:
    """Exact maximum by enumeration with node 0 pinned (flip symmetry)."""
    if n == 1:
        return 0, sum(t.when_equal for t in terms)
    xs = np.arange(1 << (n - 1), dtype=np.int64) << 1
    vals = np.zeros(len(xs), dtype=np.int64)
    for t in terms:
        differ = ((xs >> t.i) ^ (xs >> t.j)) & 1
        vals += np.where(differ == 1, t.when_differ, t.when_equal)
    i = int(np.argmax(vals))
    return int(xs[i]), int(vals[i])


def _fits_cap(terms: tuple[PairTerm, ...], n: int, cap: int) -> bool:
    try:
        _layout_for(n, max(1, _max_objective(terms)), cap)
        return True
    except (CapacityError, ValueError):
        return False


def _maximize_flips(
    terms: tuple[PairTerm, ...], n: int, cfg: DncConfig, depth: int
) -> int:
    """Best flip vector (as an int) for a pairwise objective over n nodes."""
    if n <= 1 or not terms:
        return 0
    if n <= cfg.meta_brute_limit:
        bits, _ = _enumerate_flips(terms, n)
        return bits
    if n <= cfg.max_part_size and _fits_cap(terms, n, cfg.qubit_cap):
        if _max_objective(terms) == 0:
            return 0
        outcome = maximize_pair_objective(terms, n, _qga_config(cfg, _STREAM_META, depth))
        return outcome.best_bits
    # still too large: partition the support graph and contract once more
    support_edges = tuple(
        (t.i, t.j, t.when_equal + t.when_differ)
        for t in terms
        if t.when_equal + t.when_differ > 0
    )
    support = Graph(n, support_edges)
    sub_partition = partition_graph(
        support, cfg.max_part_size, derive_seed(cfg.seed, _STREAM_SPLIT, depth)
    )
    groups = sub_partition.parts
    position: dict[int, tuple[int, int]] = {}
    for gi, group in enumerate(groups):
        for i, v in enumerate(group):
            position[v] = (gi, i)

    local_bits: list[list[int]] = []
    for gi, group in enumerate(groups):
        index = {v: i for i, v in enumerate(group)}
        inner = tuple(
            PairTerm(index[t.i], index[t.j], t.when_equal, t.when_differ)
            for t in terms
            if position[t.i][0] == gi and position[t.j][0] == gi
        )
        bits_int = _maximize_flips(inner, len(group), cfg, depth + 1)
        local_bits.append([(bits_int >> i) & 1 for i in range(len(group))])

    reduced: dict[tuple[int, int], list[int]] = {}
    for t in terms:
        gi, ii = position[t.i]
        gj, jj = position[t.j]
        if gi == gj:
            continue
        a, b = (gi, gj) if gi < gj else (gj, gi)
        entry = reduced.setdefault((a, b), [0, 0])
        # with equal super-flips the local relation stands; one flip inverts it
        if local_bits[gi][ii] == local_bits[gj][jj]:
            entry[0] += t.when_equal
            entry[1] += t.when_differ
        else:
            entry[0] += t.when_differ
            entry[1] += t.when_equal
    reduced_terms = tuple(
        PairTerm(i, j, eq, neq) for (i, j), (eq, neq) in sorted(reduced.items())
    )
    super_bits = _maximize_flips(reduced_terms, len(groups), cfg, depth + 1)

    flips = 0
    for v in range(n):
        gi, ii = position[v]
        bit = local_bits[gi][ii] ^ ((super_bits >> gi) & 1)
        flips |= bit << v
    return flips


def solve_meta(m: MetaGraph, cfg: DncConfig) -> tuple[int, ...]:
    """Flip bit per part maximizing the contracted objective."""
    terms = tuple(PairTerm(i, j, c_same, c_diff) for i, j, c_same, c_diff in m.pairs)
    bits = _maximize_flips(terms, m.num_parts, cfg, depth=0)
    return tuple((bits >> i) & 1 for i in range(m.num_parts))


def _graph_fits_direct(g: Graph, cfg: DncConfig) -> bool:
    if g.num_vertices > cfg.max_part_size:
        return False
    try:
        _layout_for(g.num_vertices, max(1, g.total_weight), cfg.qubit_cap)
        return True
    except (CapacityError, ValueError):
        return False


def dnc_maxcut(g: Graph, cfg: DncConfig | None = None) -> RunReport:
    """Solve via partitioning and contraction; small graphs run the search directly."""
    cfg = cfg or DncConfig()
    start = time.perf_counter()

    if g.total_weight == 0 or g.num_vertices < 2:
        assignment = CutAssignment.zeros(g.num_vertices)
        return build_report(
            g, "dnc", assignment, seed=cfg.seed,
            wall_ms=int(1000 * (time.perf_counter() - start)),
            details={"direct": True, "boundary_weight": 0},
        )

    if _graph_fits_direct(g, cfg):
        inner = run_qga_maxcut(g, replace(cfg.qga, seed=cfg.seed, qubit_cap=cfg.qubit_cap))
        details = dict(inner.details)
        details.update({"direct": True, "boundary_weight": 0})
        return RunReport(
            method="dnc",
            best_value=inner.best_value,
            assignment=inner.assignment,
            oracle_calls=inner.oracle_calls,
            measurements=inner.measurements,
            qubits_used=inner.qubits_used,
            seed=cfg.seed,
            wall_ms=int(1000 * (time.perf_counter() - start)),
            details=details,
        )

    p = partition_graph(g, cfg.max_part_size, derive_seed(cfg.seed, _STREAM_PART))
    solutions: list[CutAssignment] = []
    oracle_calls = 0
    measurements = 0
    qubits_used = 0
    for i in range(p.num_parts):
        sub = induced_subgraph_from_part(p, i)
        assignment, _, report = _solve_part_full(sub, _qga_config(cfg, _STREAM_PART, i))
        solutions.append(assignment)
        if report is not None:
            oracle_calls += report.oracle_calls
            measurements += report.measurements
            qubits_used = max(qubits_used, report.qubits_used)

    meta = contract(p, solutions)
    flips = solve_meta(meta, cfg)
    meta_value = meta.objective(flips)

    bits = [0] * g.num_vertices
    for i, part in enumerate(p.parts):
        for offset, v in enumerate(part):
            bits[v] = solutions[i].bits[offset] ^ flips[i]
    assignment = CutAssignment(tuple(bits))
    pre_polish_value = cut_value(g, assignment)
    if cfg.polish:
        assignment = local_search_improve(g, assignment)

    boundary_weight = sum(w for _, _, w, _, _ in p.boundary_edges)
    details = {
        "direct": False,
        "num_parts": p.num_parts,
        "part_sizes": [len(part) for part in p.parts],
        "parts": [list(part) for part in p.parts],
        "local_solutions": [s.to_string() for s in solutions],
        "local_values": list(meta.local_values),
        "meta_pairs": [list(pair) for pair in meta.pairs],
        "flips": list(flips),
        "meta_value": meta_value,
        "pre_polish_value": pre_polish_value,
        "boundary_weight": boundary_weight,
    }
    return build_report(
        g,
        "dnc",
        assignment,
        oracle_calls=oracle_calls,
        measurements=measurements,
        qubits_used=qubits_used,
        seed=cfg.seed,
        wall_ms=int(1000 * (time.perf_counter() - start)),
        details=details,
    )
