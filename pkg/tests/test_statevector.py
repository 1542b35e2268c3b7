import numpy as np
import pytest

from grovercut.errors import CapacityError
from grovercut.rng import make_rng
from grovercut.statevector import (
    allocate,
    apply_gate,
    apply_h_range,
    basis_state,
    ccx,
    cnot,
    h,
    mcx,
    measure,
    phase_flip_if_one,
    program,
    run_program,
    x,
    z,
)

from conftest import basis_index_of

SQ = 2 ** -0.5


def random_program(num_qubits, rng, length=20):
    gates = []
    for _ in range(length):
        kind = rng.integers(0, 4)
        target = int(rng.integers(0, num_qubits))
        if kind == 0:
            gates.append(x(target))
        elif kind == 1:
            gates.append(h(target))
        elif kind == 2:
            gates.append(z(target))
        else:
            others = [q for q in range(num_qubits) if q != target]
            take = int(rng.integers(0, min(3, len(others)) + 1))
            gates.append(mcx(others[:take], target))
    return program(gates)


def random_state(num_qubits, seed):
    rng = make_rng(seed)
    amps = rng.standard_normal(1 << num_qubits) + 1j * rng.standard_normal(1 << num_qubits)
    amps /= np.linalg.norm(amps)
    state = allocate(num_qubits)
    state.amplitudes[:] = amps
    return state


class TestAllocate:
    def test_one_qubit(self):
        assert np.array_equal(allocate(1).amplitudes, [1, 0])

    def test_three_qubits(self):
        s = allocate(3)
        assert len(s.amplitudes) == 8
        assert s.amplitudes[0] == 1

    def test_cap_enforced(self):
        with pytest.raises(CapacityError) as err:
            allocate(27, cap=26)
        assert err.value.required == 27
        assert err.value.available == 26


class TestSingleGates:
    def test_h_on_zero(self):
        s = apply_gate(allocate(1), h(0))
        assert np.allclose(s.amplitudes, [SQ, SQ])

    def test_h_on_one(self):
        s = apply_gate(basis_state(1, 1), h(0))
        assert np.allclose(s.amplitudes, [SQ, -SQ])

    def test_x_flips(self):
        s = apply_gate(allocate(1), x(0))
        assert np.allclose(s.amplitudes, [0, 1])

    def test_z_phase(self):
        s = apply_gate(basis_state(1, 1), z(0))
        assert np.allclose(s.amplitudes, [0, -1])

    def test_phase_flip_alias_is_z(self):
        assert phase_flip_if_one(2) == z(2)

    def test_target_out_of_range(self):
        with pytest.raises(ValueError):
            apply_gate(allocate(2), x(2))

    def test_control_equals_target_rejected(self):
        with pytest.raises(ValueError):
            cnot(1, 1)


class TestCnotTable:
    # |control target> written most-significant-first: control is qubit 1
    @pytest.mark.parametrize(
        "index_in,index_out", [(0b00, 0b00), (0b01, 0b01), (0b10, 0b11), (0b11, 0b10)]
    )
    def test_cnot_basis_action(self, index_in, index_out):
        s = apply_gate(basis_state(2, index_in), cnot(1, 0))
        assert basis_index_of(s) == index_out


class TestMcx:
    def test_zero_controls_is_x(self):
        a = apply_gate(basis_state(3, 0b101), mcx([], 1))
        b = apply_gate(basis_state(3, 0b101), x(1))
        assert np.allclose(a.amplitudes, b.amplitudes)

    def test_exhaustive_four_qubits(self):
        controls, target = [0, 2, 3], 1
        for idx in range(16):
            s = apply_gate(basis_state(4, idx), mcx(controls, target))
            if all((idx >> c) & 1 for c in controls):
                expected = idx ^ (1 << target)
            else:
                expected = idx
            assert basis_index_of(s) == expected

    def test_ccx_truth_table(self):
        for idx in range(8):
            s = apply_gate(basis_state(3, idx), ccx(0, 1, 2))
            expected = idx ^ (1 << 2) if (idx & 0b11) == 0b11 else idx
            assert basis_index_of(s) == expected


class TestHRange:
    def test_two_qubits_uniform(self):
        s = apply_h_range(allocate(2), [0, 1])
        assert np.allclose(s.amplitudes, [0.5] * 4)

    def test_three_qubits_uniform(self):
        s = apply_h_range(allocate(3), [0, 1, 2])
        assert np.allclose(s.amplitudes, [8 ** -0.5] * 8)

    def test_involution(self):
        s = random_state(4, 5)
        before = s.amplitudes.copy()
        apply_h_range(apply_h_range(s, [1, 2]), [1, 2])
        assert np.allclose(s.amplitudes, before, atol=1e-10)


class TestPrograms:
    def test_empty_program_is_identity(self):
        s = random_state(3, 1)
        before = s.amplitudes.copy()
        run_program(s, program([]))
        assert np.array_equal(s.amplitudes, before)

    def test_xor_into_ancilla(self):
        # qubits 2,1 hold bits (1,1); ancilla qubit 0 collects the XOR = 0
        s = basis_state(3, 0b110)
        run_program(s, program([cnot(2, 0), cnot(1, 0)]))
        assert basis_index_of(s) == 0b110

    def test_inversion_restores_random_state(self):
        rng = make_rng(7)
        for trial in range(5):
            p = random_program(5, rng, length=30)
            s = random_state(5, trial)
            before = s.amplitudes.copy()
            run_program(s, p)
            run_program(s, p.inverted())
            fidelity = abs(np.vdot(before, s.amplitudes)) ** 2
            assert fidelity >= 1 - 1e-10

    def test_norm_preserved_after_programs(self):
        rng = make_rng(3)
        for trial in range(10):
            s = random_state(6, 100 + trial)
            run_program(s, random_program(6, rng, length=40))
            assert s.norm_error() < 1e-10

    def test_linearity(self):
        # program applied to (|a> + |b>)/sqrt(2) equals the superposed results
        p = program([h(0), cnot(0, 2), x(1), z(2), mcx([0, 1], 3)])
        a, b = 3, 9
        sup = allocate(4)
        sup.amplitudes[:] = 0
        sup.amplitudes[a] = SQ
        sup.amplitudes[b] = SQ
        run_program(sup, p)
        sa = basis_state(4, a)
        sb = basis_state(4, b)
        run_program(sa, p)
        run_program(sb, p)
        combined = (sa.amplitudes + sb.amplitudes) * SQ
        assert np.allclose(sup.amplitudes, combined, atol=1e-10)


class TestMeasure:
    def test_basis_state_every_shot(self):
        s = basis_state(3, 0b101)
        assert measure(s, seed=0, shots=20) == ["101"] * 20

    def test_uniform_frequencies_within_4_sigma(self):
        s = apply_h_range(allocate(2), [0, 1])
        shots = measure(s, seed=42, shots=4096)
        sigma = (4096 * 0.25 * 0.75) ** 0.5
        for outcome in ("00", "01", "10", "11"):
            assert abs(shots.count(outcome) - 1024) <= 4 * sigma

    def test_same_seed_same_shots(self):
        s = apply_h_range(allocate(3), [0, 1, 2])
        assert measure(s, 9, 50) == measure(s, 9, 50)

    def test_state_not_collapsed(self):
        s = apply_h_range(allocate(2), [0, 1])
        before = s.amplitudes.copy()
        measure(s, 1, 100)
        assert np.array_equal(s.amplitudes, before)

    def test_msb_first_printing(self):
        # index 4 = qubit 2 set: printed leftmost
        assert measure(basis_state(3, 4), 0, 1) == ["100"]
