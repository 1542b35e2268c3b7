"""Grover-amplified MaxCut toolkit.

A dense state-vector simulator runs a rising-threshold Grover search over
one-qubit-per-vertex cut candidates, with the cut value computed into an
entangled fitness register by reversible counting circuits. A
divide-and-conquer wrapper contracts large graphs into per-part
meta-problems, and exact enumeration, random sampling and a low-rank
relaxation with hyperplane rounding serve as classical baselines.
"""

from .budget import QubitBudget, qubit_bound, qubit_budget
from .dnc import DncConfig, MetaGraph, contract, dnc_maxcut, solve_meta, solve_part
from .errors import CapacityError
from .graphs import (
    CutAssignment,
    Graph,
    brute_force_maxcut,
    complete_graph_optimum,
    cut_value,
    format_edge_list,
    generate_complete,
    generate_erdos_renyi,
    load_graph,
    local_search_improve,
    lower_bound,
    parse_edge_list,
    random_cut_baseline,
    save_graph,
)
from .gw import GwConfig, VectorEmbedding, gw_maxcut, hyperplane_round, solve_relaxation
from .partition import Partition, partition_graph
from .qga import (
    FitnessCircuit,
    QgaConfig,
    RegisterLayout,
    apply_diffusion,
    apply_oracle,
    build_fitness_circuit,
    build_layout,
    grover_iterations,
    run_qga_maxcut,
)
from .reports import RunReport, build_report
from .statevector import (
    DEFAULT_QUBIT_CAP,
    CircuitProgram,
    Gate,
    QuantumState,
    allocate,
    apply_gate,
    apply_h_range,
    basis_state,
    measure,
    run_program,
)

__version__ = "0.1.0"
