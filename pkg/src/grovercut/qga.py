"""Grover-amplified genetic search for maximum cuts.

One qubit per vertex encodes a candidate partition; a fitness register,
entangled with the individual register by a reversible counting circuit,
holds that candidate's cut value. An oracle phase-marks every component
whose fitness exceeds the current threshold, diffusion amplifies the marked
amplitudes, and measured samples raise the threshold for the next round
(maximum finding by rising threshold). The loop stops once the best
observed value stops improving.

The same machinery runs on generalized pairwise objectives (``PairTerm``),
which is how contracted meta-problems are solved: a term contributes one
amount when two sites agree and another when they differ. A plain graph
edge is the special case (agree: 0, differ: weight).

Each amplification step is oracle, fitness uncompute, diffusion, fitness
recompute: reflecting about the uniform state is only a valid inversion
about the mean while the ancilla registers are disentangled, so the
fitness register is cleared before every diffusion. This keeps the marked
probability after r steps exactly sin^2((2r+1) asin(sqrt(k/N))).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .arithmetic import build_compare_greater, build_controlled_increment
from .errors import CapacityError
from .graphs import CutAssignment, Graph
from .reports import RunReport, build_report
from .rng import make_rng
from .statevector import (
    DEFAULT_QUBIT_CAP,
    CircuitProgram,
    QuantumState,
    allocate,
    apply_h_range,
    cnot,
    probabilities,
    program,
    run_program,
    sampled_indices,
    x,
    z,
)

_STREAM_MEASURE = 202


@dataclass(frozen=True)
class QgaConfig:
    seed: int = 0
    max_rounds: int = 40
    stagnation_limit: int = 3
    shots_per_round: int = 32
    iteration_mode: str = "adaptive"  # 'adaptive' or 'paper_fixed'
    qubit_cap: int = DEFAULT_QUBIT_CAP

    def __post_init__(self):
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")
        if self.stagnation_limit < 1:
            raise ValueError("stagnation_limit must be >= 1")
        if self.shots_per_round < 1:
            raise ValueError("shots_per_round must be >= 1")
        if self.iteration_mode not in ("adaptive", "paper_fixed"):
            raise ValueError(f"unknown iteration mode {self.iteration_mode!r}")


@dataclass(frozen=True)
class PairTerm:
    """Objective term on sites (i, j): adds `when_equal` or `when_differ`."""

    i: int
    j: int
    when_equal: int
    when_differ: int


@dataclass(frozen=True)
class RegisterLayout:
    """Qubit indices per register; individual occupies the low qubits."""

    individual: tuple[int, ...]
    xor_ancilla: int
    fitness: tuple[int, ...]
    threshold: tuple[int, ...]
    carry_in: int
    carry_out: int
    flag: int
    num_qubits: int

    @property
    def fitness_bits(self) -> int:
        return len(self.fitness)


@dataclass(frozen=True)
class FitnessCircuit:
    program: CircuitProgram
    layout: RegisterLayout
    graph: Graph


def terms_from_graph(g: Graph) -> tuple[PairTerm, ...]:
    return tuple(PairTerm(u, v, 0, w) for u, v, w in g.edges)


def _max_objective(terms: Sequence[PairTerm]) -> int:
    return sum(max(t.when_equal, t.when_differ) for t in terms)


def _mean_floor(terms: Sequence[PairTerm]) -> int:
    return sum(t.when_equal + t.when_differ for t in terms) // 2


def _layout_for(num_sites: int, max_fitness: int, cap: int) -> RegisterLayout:
    if num_sites < 2:
        raise ValueError("need at least 2 sites for a cut search")
    if max_fitness < 1:
        raise ValueError("objective must be able to exceed zero")
    m = max_fitness.bit_length()  # == ceil(log2(max_fitness + 1))
    v = num_sites
    total = v + 2 * m + 4
    if total > cap:
        raise CapacityError(
            f"register layout ({v} individual + 1 xor + {m} fitness + {m} threshold"
            " + 2 carry + 1 flag) qubits",
            total,
            cap,
        )
    return RegisterLayout(
        individual=tuple(range(v)),
        xor_ancilla=v,
        fitness=tuple(range(v + 1, v + 1 + m)),
        threshold=tuple(range(v + 1 + m, v + 1 + 2 * m)),
        carry_in=v + 1 + 2 * m,
        carry_out=v + 2 + 2 * m,
        flag=v + 3 + 2 * m,
        num_qubits=total,
    )


def build_layout(g: Graph, cap: int = DEFAULT_QUBIT_CAP) -> RegisterLayout:
    """Register plan for a graph: |V| individual qubits plus fitness machinery.

    The fitness and threshold registers are sized to hold the largest
    reachable cut value (the total edge weight), which for unit weights is
    ceil(log2(|E| + 1)) bits.
    """
    if g.total_weight < 1:
        raise ValueError("graph has no weight to cut; layout undefined")
    return _layout_for(g.num_vertices, g.total_weight, cap)


def _term_program(terms: Sequence[PairTerm], layout: RegisterLayout) -> CircuitProgram:
    gates = []
    xq = layout.xor_ancilla
    freg = layout.fitness
    for t in terms:
        if t.when_equal == 0 and t.when_differ == 0:
            continue
        gates.append(cnot(t.i, xq))
        gates.append(cnot(t.j, xq))
        if t.when_differ:
            gates.extend(build_controlled_increment(xq, freg, t.when_differ).gates)
        if t.when_equal:
            gates.append(x(xq))
            gates.extend(build_controlled_increment(xq, freg, t.when_equal).gates)
            gates.append(x(xq))
        gates.append(cnot(t.i, xq))
        gates.append(cnot(t.j, xq))
    return program(gates)


def build_fitness_circuit(g: Graph, layout: RegisterLayout) -> FitnessCircuit:
    """Counting circuit: per edge, XOR the endpoint qubits into the ancilla,
    add the edge weight to the fitness register under that ancilla, then
    restore the ancilla. Composes to fitness = cut value of the individual."""
    return FitnessCircuit(_term_program(terms_from_graph(g), layout), layout, g)


def oracle_program(layout: RegisterLayout, threshold: int) -> CircuitProgram:
    """Phase-flip components whose fitness exceeds `threshold`.

    Comparator computes the flag, a Z on the flag kicks the phase back, and
    the mirrored comparator restores the flag and workspace.
    """
    compare = build_compare_greater(
        layout.fitness,
        layout.threshold,
        threshold,
        layout.flag,
        (layout.carry_in, layout.carry_out),
    )
    return compare + program([z(layout.flag)]) + compare.inverted()


def apply_oracle(state: QuantumState, layout: RegisterLayout, threshold: int) -> QuantumState:
    return run_program(state, oracle_program(layout, threshold))


def apply_diffusion(state: QuantumState, individual_qubits: Iterable[int]) -> QuantumState:
    """Reflect amplitudes about their mean over the individual register.

    Applied directly to the state vector (exactly 2|s><s| - I on the
    individual factor, for every setting of the remaining qubits). Valid as
    an amplification step only while the other registers are disentangled.
    """
    qs = tuple(individual_qubits)
    if qs != tuple(range(len(qs))):
        raise ValueError("individual register must occupy qubits 0..V-1")
    block = 1 << len(qs)
    view = state.amplitudes.reshape(-1, block)
    mean = view.mean(axis=1)
    np.subtract(2.0 * mean[:, None], view, out=view)
    return state


def grover_iterations(fitness_bits: int, mode: str = "paper_fixed") -> int:
    """Amplification count from the fitness-register size.

    'paper_fixed' returns max(1, floor(pi/4 * sqrt(2^(M-1)))), treating half
    the fitness space as the search space; that count is used verbatim every
    round. 'adaptive' returns the same number, but there it only floors the
    iteration cap: the loop itself escalates r = 0, 1, 4, 13, ... while
    rounds fail to improve, because the marked count (and with it the right
    iteration count) is unknown and changes with the threshold.
    """
    if fitness_bits < 1:
        raise ValueError("fitness register needs at least 1 bit")
    if mode not in ("adaptive", "paper_fixed"):
        raise ValueError(f"unknown iteration mode {mode!r}")
    return max(1, math.floor(math.pi / 4.0 * math.sqrt(2.0 ** (fitness_bits - 1))))


@lru_cache(maxsize=128)
def _objective_table(terms: tuple[PairTerm, ...], num_sites: int) -> np.ndarray:
    """Objective value for every integer-encoded site vector."""
    xs = np.arange(1 << num_sites, dtype=np.int64)
    vals = np.zeros(len(xs), dtype=np.int64)
    for t in terms:
        differ = ((xs >> t.i) ^ (xs >> t.j)) & 1
        vals += np.where(differ == 1, t.when_differ, t.when_equal)
    return vals


def _marked_mass(state: QuantumState, table: np.ndarray, threshold: int, num_sites: int) -> float:
    marginal = probabilities(state).reshape(-1, 1 << num_sites).sum(axis=0)
    return float(marginal[table > threshold].sum())


@dataclass
class GroverOutcome:
    best_bits: int
    best_value: int
    rounds: int
    oracle_calls: int
    measurements: int
    layout: RegisterLayout
    trace: list[dict] = field(default_factory=list)


def maximize_pair_objective(
    terms: Sequence[PairTerm], num_sites: int, cfg: QgaConfig
) -> GroverOutcome:
    """Rising-threshold Grover loop over a pairwise objective."""
    terms = tuple(terms)
    layout = _layout_for(num_sites, _max_objective(terms), cfg.qubit_cap)
    table = _objective_table(terms, num_sites)
    fitness_prog = _term_program(terms, layout)
    inverse_fitness = fitness_prog.inverted()

    threshold = _mean_floor(terms)
    r_fixed = grover_iterations(layout.fitness_bits, "paper_fixed")
    # marked individuals come in complement pairs, so k >= 2 whenever any
    # state is marked; iterating past pi/4 sqrt(N/2) buys nothing
    r_cap = max(r_fixed, math.ceil(math.pi / 4.0 * math.sqrt(2.0 ** (num_sites - 1))))
    rng_meas = make_rng(cfg.seed, _STREAM_MEASURE)

    mask = (1 << num_sites) - 1
    best_value = -1
    best_bits = 0
    stagnation = 0
    rounds = 0
    oracle_calls = 0
    trace: list[dict] = []

    while rounds < cfg.max_rounds and stagnation < cfg.stagnation_limit:
        if cfg.iteration_mode == "paper_fixed":
            r = r_fixed
        else:
            # Escalation ladder (2r+1) = 3^stagnation, i.e. r = 0, 1, 4, 13...
            # With 32 shots a round succeeds w.h.p. once the marked
            # probability sin^2((2r+1) theta) reaches ~0.4, which holds for
            # (2r+1)*theta in [0.69, pi-0.69]; tripling (2r+1) per stagnant
            # round makes those windows overlap, so every unknown marked
            # count gets a high-probability round before the run can stop.
            # A fresh round (stagnation 0) is a pure sampling round, which
            # also covers the large-marked-fraction case where a single
            # amplification step can zero the marked probability exactly
            # (6 of 8 marked: sin^2(3 asin(sqrt(3/4))) = 0).
            r = min(r_cap, (3 ** stagnation - 1) // 2)
        state = allocate(layout.num_qubits, cfg.qubit_cap)
        apply_h_range(state, layout.individual)
        run_program(state, fitness_prog)
        for _ in range(r):
            apply_oracle(state, layout, threshold)
            run_program(state, inverse_fitness)
            apply_diffusion(state, layout.individual)
            run_program(state, fitness_prog)
        marked_probability = _marked_mass(state, table, threshold, num_sites)

        shot_seed = int(rng_meas.integers(0, 1 << 63))
        samples = sampled_indices(state, shot_seed, cfg.shots_per_round) & mask
        # the complement of a sample scores identically; keep the lower encoding
        reps = np.minimum(samples, samples ^ mask)
        values = table[samples]
        round_value = int(values.max())
        round_bits = int(reps[values == round_value].min())

        trace.append(
            {
                "T": int(threshold),
                "r": int(r),
                "marked_probability": marked_probability,
                "round_best": round_value,
            }
        )
        oracle_calls += r
        rounds += 1
        if round_value > best_value:
            best_value = round_value
            best_bits = round_bits
            stagnation = 0
        else:
            stagnation += 1
        threshold = max(threshold, best_value)

    return GroverOutcome(
        best_bits=best_bits,
        best_value=best_value,
        rounds=rounds,
        oracle_calls=oracle_calls,
        measurements=rounds * cfg.shots_per_round,
        layout=layout,
        trace=trace,
    )


def run_qga_maxcut(g: Graph, cfg: QgaConfig | None = None) -> RunReport:
    """Full search on a graph; returns the best sampled cut as a report."""
    cfg = cfg or QgaConfig()
    start = time.perf_counter()
    if g.total_weight == 0 or g.num_vertices < 2:
        assignment = CutAssignment.zeros(g.num_vertices)
        return build_report(
            g, "qga", assignment, seed=cfg.seed,
            wall_ms=int(1000 * (time.perf_counter() - start)),
            details={"rounds": [], "trivial": True},
        )
    outcome = maximize_pair_objective(terms_from_graph(g), g.num_vertices, cfg)
    assignment = CutAssignment.from_int(outcome.best_bits, g.num_vertices)
    return build_report(
        g,
        "qga",
        assignment,
        oracle_calls=outcome.oracle_calls,
        measurements=outcome.measurements,
        qubits_used=outcome.layout.num_qubits,
        seed=cfg.seed,
        wall_ms=int(1000 * (time.perf_counter() - start)),
        details={"rounds": outcome.trace, "num_rounds": outcome.rounds},
    )
