import math

import numpy as np
import pytest

from grovercut.errors import CapacityError
from grovercut.graphs import (
    CutAssignment,
    Graph,
    brute_force_maxcut,
    cut_value,
    generate_complete,
    generate_erdos_renyi,
)
from grovercut.qga import (
    QgaConfig,
    apply_diffusion,
    apply_oracle,
    build_fitness_circuit,
    build_layout,
    grover_iterations,
    run_qga_maxcut,
)
from grovercut.statevector import allocate, apply_h_range, basis_state, run_program

from conftest import basis_index_of, cut_counts_by_assignment


def read_registers(idx, layout):
    def reg(qubits):
        return sum(((idx >> q) & 1) << i for i, q in enumerate(qubits))

    return {
        "individual": reg(layout.individual),
        "xor": (idx >> layout.xor_ancilla) & 1,
        "fitness": reg(layout.fitness),
        "threshold": reg(layout.threshold),
        "carry_in": (idx >> layout.carry_in) & 1,
        "carry_out": (idx >> layout.carry_out) & 1,
        "flag": (idx >> layout.flag) & 1,
    }


class TestLayout:
    def test_k3_layout(self):
        layout = build_layout(generate_complete(3))
        assert len(layout.individual) == 3
        assert layout.fitness_bits == 2
        assert layout.num_qubits == 11

    def test_single_edge_layout(self):
        layout = build_layout(Graph(2, ((0, 1, 1),)))
        assert layout.fitness_bits == 1
        # 2 individual + 1 xor + 1 fitness + 1 threshold + 2 carries + 1 flag
        assert layout.num_qubits == 8

    def test_k8_fitness_bits(self):
        assert build_layout(generate_complete(8)).fitness_bits == 5

    def test_registers_disjoint_and_cover(self):
        layout = build_layout(generate_erdos_renyi(6, 0.5, 0))
        qubits = (
            list(layout.individual)
            + [layout.xor_ancilla]
            + list(layout.fitness)
            + list(layout.threshold)
            + [layout.carry_in, layout.carry_out, layout.flag]
        )
        assert sorted(qubits) == list(range(layout.num_qubits))

    def test_cap_exceeded_reports_deficit(self):
        with pytest.raises(CapacityError) as err:
            build_layout(generate_complete(12), cap=26)
        assert err.value.required == 30
        assert err.value.available == 26


class TestFitnessCircuit:
    @pytest.mark.parametrize(
        "g",
        [
            generate_complete(3),
            generate_erdos_renyi(5, 0.5, 2),
            generate_erdos_renyi(6, 0.4, 5),
            Graph(4, ((0, 1, 3), (1, 2, 2), (2, 3, 1))),  # weighted
        ],
        ids=["k3", "er5", "er6", "weighted-path"],
    )
    def test_exhaustive_fitness_and_clean_ancillas(self, g):
        layout = build_layout(g)
        circuit = build_fitness_circuit(g, layout)
        for u in range(1 << g.num_vertices):
            s = basis_state(layout.num_qubits, u)
            run_program(s, circuit.program)
            regs = read_registers(basis_index_of(s), layout)
            expected = cut_value(g, CutAssignment.from_int(u, g.num_vertices))
            assert regs["fitness"] == expected
            assert regs["individual"] == u
            assert regs["xor"] == 0
            assert regs["threshold"] == 0
            assert regs["carry_in"] == 0 and regs["carry_out"] == 0 and regs["flag"] == 0

    def test_k3_example_value(self):
        g = generate_complete(3)
        layout = build_layout(g)
        circuit = build_fitness_circuit(g, layout)
        s = basis_state(layout.num_qubits, 0b011)
        run_program(s, circuit.program)
        assert read_registers(basis_index_of(s), layout)["fitness"] == 2

    def test_complement_symmetry(self):
        g = generate_erdos_renyi(6, 0.5, 7)
        layout = build_layout(g)
        circuit = build_fitness_circuit(g, layout)
        mask = (1 << g.num_vertices) - 1
        for u in (0b010101, 0b001100, 0b111000):
            values = []
            for candidate in (u, u ^ mask):
                s = basis_state(layout.num_qubits, candidate)
                run_program(s, circuit.program)
                values.append(read_registers(basis_index_of(s), layout)["fitness"])
            assert values[0] == values[1]

    def test_exhaustive_eight_vertices(self):
        # largest direct-search size: all 256 individuals in one superposed pass
        g = generate_erdos_renyi(8, 0.5, 13)
        layout = build_layout(g)
        circuit = build_fitness_circuit(g, layout)
        state = apply_h_range(allocate(layout.num_qubits), layout.individual)
        run_program(state, circuit.program)
        amps = state.amplitudes
        cuts = cut_counts_by_assignment(g)
        scale = 2 ** -4.0
        for u in range(256):
            idx = u | (cuts[u] << (layout.fitness[0]))
            assert abs(amps[idx] - scale) < 1e-12
        assert abs(np.abs(amps).sum() - 256 * scale) < 1e-9  # nothing anywhere else


class TestOracleEightVertices:
    def test_phase_pattern_matches_classical_predicate(self):
        g = generate_erdos_renyi(8, 0.5, 13)
        layout = build_layout(g)
        circuit = build_fitness_circuit(g, layout)
        state = apply_h_range(allocate(layout.num_qubits), layout.individual)
        run_program(state, circuit.program)
        before = state.amplitudes.copy()
        threshold = g.total_weight // 2
        apply_oracle(state, layout, threshold)
        cuts = cut_counts_by_assignment(g)
        for u in range(256):
            idx = u | (cuts[u] << (layout.fitness[0]))
            expected = -1.0 if cuts[u] > threshold else 1.0
            assert abs(state.amplitudes[idx] - expected * before[idx]) < 1e-12


class TestOracle:
    def test_k3_marks_exactly_the_six_best(self):
        g = generate_complete(3)
        layout = build_layout(g)
        circuit = build_fitness_circuit(g, layout)
        state = apply_h_range(allocate(layout.num_qubits), layout.individual)
        run_program(state, circuit.program)
        before = state.amplitudes.copy()
        apply_oracle(state, layout, 1)
        ratio = state.amplitudes[np.abs(before) > 1e-12] / before[np.abs(before) > 1e-12]
        cuts = cut_counts_by_assignment(g)
        flipped = 0
        for u in range(8):
            s_in = basis_state(layout.num_qubits, u)
            run_program(s_in, circuit.program)
            idx = basis_index_of(s_in)
            sign = state.amplitudes[idx] / before[idx]
            if cuts[u] > 1:
                assert np.isclose(sign, -1)
                flipped += 1
            else:
                assert np.isclose(sign, 1)
        assert flipped == 6

    def test_threshold_at_max_marks_nothing(self):
        g = generate_complete(3)
        layout = build_layout(g)
        circuit = build_fitness_circuit(g, layout)
        state = apply_h_range(allocate(layout.num_qubits), layout.individual)
        run_program(state, circuit.program)
        before = state.amplitudes.copy()
        apply_oracle(state, layout, 3)
        assert np.allclose(state.amplitudes, before, atol=1e-12)


class TestDiffusion:
    def test_uniform_is_fixed_point(self):
        s = apply_h_range(allocate(4), range(4))
        before = s.amplitudes.copy()
        apply_diffusion(s, range(4))
        assert np.allclose(s.amplitudes, before, atol=1e-10)

    def test_two_qubit_matrix_action(self):
        s = basis_state(2, 0)
        apply_diffusion(s, range(2))
        assert np.allclose(s.amplitudes, [-0.5, 0.5, 0.5, 0.5])

    def test_involution(self):
        rng = np.random.default_rng(0)
        s = allocate(3)
        amps = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        s.amplitudes[:] = amps / np.linalg.norm(amps)
        before = s.amplitudes.copy()
        apply_diffusion(apply_diffusion(s, range(3)), range(3))
        assert np.allclose(s.amplitudes, before, atol=1e-10)

    def test_acts_per_ancilla_block(self):
        # with one extra qubit the reflection applies within each block
        s = allocate(3)
        s.amplitudes[:] = 0
        s.amplitudes[0b100] = 1.0  # ancilla qubit 2 set, individual = |00>
        apply_diffusion(s, range(2))
        expected = np.zeros(8, dtype=complex)
        expected[0b100] = -0.5
        expected[0b101] = 0.5
        expected[0b110] = 0.5
        expected[0b111] = 0.5
        assert np.allclose(s.amplitudes, expected)

    def test_requires_low_qubits(self):
        with pytest.raises(ValueError):
            apply_diffusion(allocate(3), [1, 2])


class TestGroverIterations:
    @pytest.mark.parametrize("m,expected", [(3, 1), (5, 3), (1, 1), (4, 2)])
    def test_paper_fixed(self, m, expected):
        assert grover_iterations(m, "paper_fixed") == expected

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            grover_iterations(3, "sometimes")


class TestAmplificationLaw:
    @pytest.mark.parametrize(
        "g",
        [generate_complete(4), generate_erdos_renyi(5, 0.5, 3), generate_erdos_renyi(6, 0.5, 11)],
        ids=["k4", "er5", "er6"],
    )
    def test_marked_probability_follows_sine_law(self, g):
        n = g.num_vertices
        cuts = cut_counts_by_assignment(g)
        report = run_qga_maxcut(g, QgaConfig(seed=5))
        assert report.details["rounds"], "expected at least one round"
        for entry in report.details["rounds"]:
            k = sum(1 for c in cuts if c > entry["T"])
            theta = math.asin(math.sqrt(k / (1 << n)))
            expected = math.sin((2 * entry["r"] + 1) * theta) ** 2
            assert abs(entry["marked_probability"] - expected) < 1e-6


class TestRunQga:
    @pytest.mark.parametrize("seed", range(10))
    def test_k3_optimal_every_seed(self, seed):
        # k/N = 3/4 at the starting threshold rotates to zero marked
        # probability at exactly one iteration; the schedule must recover
        report = run_qga_maxcut(generate_complete(3), QgaConfig(seed=seed))
        assert report.best_value == 2

    def test_single_edge(self):
        report = run_qga_maxcut(Graph(2, ((0, 1, 1),)), QgaConfig(seed=0))
        assert report.best_value == 1

    @pytest.mark.parametrize("seed", range(10))
    def test_er6_matches_brute_force(self, seed):
        g = generate_erdos_renyi(6, 0.5, seed)
        _, optimum = brute_force_maxcut(g)
        report = run_qga_maxcut(g, QgaConfig(seed=seed))
        assert report.best_value == optimum

    def test_paper_fixed_mode(self):
        g = generate_complete(5)
        report = run_qga_maxcut(g, QgaConfig(seed=2, iteration_mode="paper_fixed"))
        assert report.best_value == 6

    def test_report_integrity(self):
        g = generate_erdos_renyi(7, 0.5, 4)
        report = run_qga_maxcut(g, QgaConfig(seed=1))
        assert report.best_value == cut_value(g, report.assignment)
        assert report.qubits_used == build_layout(g).num_qubits
        assert report.measurements == report.details["num_rounds"] * 32
        assert report.oracle_calls >= report.details["num_rounds"]

    def test_threshold_monotone(self):
        g = generate_erdos_renyi(7, 0.6, 8)
        report = run_qga_maxcut(g, QgaConfig(seed=3))
        thresholds = [e["T"] for e in report.details["rounds"]]
        assert thresholds == sorted(thresholds)

    def test_beats_half_weight_when_possible(self):
        g = generate_erdos_renyi(6, 0.5, 21)
        report = run_qga_maxcut(g, QgaConfig(seed=0))
        assert report.best_value >= g.total_weight // 2 + 1

    def test_deterministic_per_seed(self):
        g = generate_erdos_renyi(6, 0.5, 2)
        a = run_qga_maxcut(g, QgaConfig(seed=12))
        b = run_qga_maxcut(g, QgaConfig(seed=12))
        assert a.best_value == b.best_value
        assert a.assignment == b.assignment
        assert a.details["rounds"] == b.details["rounds"]

    def test_trivial_graph_shortcut(self):
        report = run_qga_maxcut(Graph(3, ()), QgaConfig(seed=0))
        assert report.best_value == 0
        assert report.details.get("trivial")

    def test_config_validation(self):
        with pytest.raises(ValueError):
            QgaConfig(max_rounds=0)
        with pytest.raises(ValueError):
            QgaConfig(iteration_mode="qft")
