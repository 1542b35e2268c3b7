"""Reversible integer arithmetic as gate programs.

Three building blocks:

* a ripple-carry adder from MAJ/UMA blocks (in-place ``b += a`` with an
  explicit carry-in and carry-out),
* a controlled add-constant ("increment") realized as a cascade of
  multi-controlled X gates, needing no ancilla register,
* a strict greater-than comparator that XORs ``[f > T]`` onto a flag qubit
  and restores every other register.

The comparator uses the identity  f > T  <=>  carry(f + (2^M - 1 - T)) = 1:
loading the bitwise complement of T into the threshold register and adding
makes the adder's carry-out the comparison bit, with no sign bit needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .statevector import CircuitProgram, Gate, cnot, ccx, mcx, program, x


@dataclass(frozen=True)
class AdderSpec:
    """Register plan for one in-place addition ``b += a``."""

    width: int
    reg_a: tuple[int, ...]
    reg_b: tuple[int, ...]
    carry_in: int
    carry_out: int

    def __post_init__(self):
        a = tuple(int(q) for q in self.reg_a)
        b = tuple(int(q) for q in self.reg_b)
        object.__setattr__(self, "reg_a", a)
        object.__setattr__(self, "reg_b", b)
        if self.width < 1:
            raise ValueError(f"width must be >= 1, got {self.width}")
        if len(a) != self.width or len(b) != self.width:
            raise ValueError("register widths must match the spec width")
        used = a + b + (self.carry_in, self.carry_out)
        if len(set(used)) != len(used):
            raise ValueError(f"adder registers overlap: {used}")


def _maj(c: int, b: int, a: int) -> list[Gate]:
    return [cnot(a, b), cnot(a, c), ccx(c, b, a)]


def _uma(c: int, b: int, a: int) -> list[Gate]:
    return [ccx(c, b, a), cnot(a, c), cnot(c, b)]


def build_adder(spec: AdderSpec) -> CircuitProgram:
    """Ripple-carry adder: |a>|b>|c0>|z> -> |a>|(a+b+c0) mod 2^w>|c0>|z^overflow>.

    MAJ blocks walk the carry up through register a, the top carry is copied
    onto the carry-out qubit, and UMA blocks walk back down, writing sum
    bits into register b and restoring a and the carry-in.
    """
    gates: list[Gate] = []
    carries = (spec.carry_in,) + spec.reg_a[:-1]
    for i in range(spec.width):
        gates.extend(_maj(carries[i], spec.reg_b[i], spec.reg_a[i]))
    gates.append(cnot(spec.reg_a[-1], spec.carry_out))
    for i in reversed(range(spec.width)):
        gates.extend(_uma(carries[i], spec.reg_b[i], spec.reg_a[i]))
    return program(gates)


def build_controlled_increment(
    ctrl: int, reg: Sequence[int], amount: int
) -> CircuitProgram:
    """If ctrl reads 1: reg <- (reg + amount) mod 2^width; else identity.

    Decomposes the constant into its set bits; adding 2^b is a ripple of
    multi-controlled X gates on reg[b:], applied most-significant target
    first so each gate still sees the original lower bits. The per-power
    additions commute, so no ancillas are required.
    """
    width = len(reg)
    if width < 1:
        raise ValueError("register must have at least one qubit")
    if not (1 <= amount < (1 << width)):
        raise ValueError(
            f"amount must be in [1, 2^{width} - 1], got {amount}"
        )
    gates: list[Gate] = []
    for b in range(width):
        if not (amount >> b) & 1:
            continue
        for j in range(width - 1, b - 1, -1):
            controls = (ctrl,) + tuple(reg[b:j])
            gates.append(mcx(controls, reg[j]))
    return program(gates)


def build_compare_greater(
    reg_f: Sequence[int],
    threshold_reg: Sequence[int],
    T: int,
    flag: int,
    carries: tuple[int, int],
) -> CircuitProgram:
    """Flag XOR= [f > T]; every other qubit is restored.

    Preconditions: threshold register, carry-in and carry-out all |0>.
    Loads 2^M - 1 - T (the bitwise complement of T) into the threshold
    register with X gates, adds f into it, copies the carry-out (which is
    1 exactly when f > T) onto the flag, then uncomputes the addition and
    the loading.
    """
    width = len(reg_f)
    if len(threshold_reg) != width:
        raise ValueError("fitness and threshold registers must have equal width")
    if not (0 <= T < (1 << width)):
        raise ValueError(f"threshold {T} does not fit in {width} bits")
    carry_in, carry_out = carries
    spec = AdderSpec(
        width=width,
        reg_a=tuple(reg_f),
        reg_b=tuple(threshold_reg),
        carry_in=carry_in,
        carry_out=carry_out,
    )
    complement = (1 << width) - 1 - T
    load = program([x(threshold_reg[b]) for b in range(width) if (complement >> b) & 1])
    adder = build_adder(spec)
    return load + adder + program([cnot(carry_out, flag)]) + adder.inverted() + load.inverted()
