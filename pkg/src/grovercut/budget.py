"""Qubit accounting: the budget formula and its complete-graph bound."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class QubitBudget:
    """Total = V*n_bits + 2*(M + m) + 3."""

    V: int
    n_bits: int
    M: int
    m: int
    total: int


def qubit_budget(V: int, n_bits: int, M: int, m: int) -> QubitBudget:
    """Evaluate the budget formula exactly."""
    if min(V, n_bits, M, m) < 0:
        raise ValueError("budget arguments must be nonnegative")
    return QubitBudget(V, n_bits, M, m, V * n_bits + 2 * (M + m) + 3)


def qubit_bound(n: int) -> int:
    """Worst-case budget for n vertices: n^2 + 2^(n(n-1)/4 + 1) + 3.

    Exact big-integer arithmetic. The exponent n(n-1)/4 is a half-integer
    when n = 2 or 3 (mod 4); those cases evaluate 2^(k + 1/2) exactly as
    sqrt(2^(2k+1)) and take the ceiling (an odd power of two is never a
    perfect square, so the result is isqrt + 1).
    """
    if n < 1:
        raise ValueError(f"vertex count must be >= 1, got {n}")
    doubled_exponent = n * (n - 1) // 2 + 2  # == 2 * (n(n-1)/4 + 1), always integral
    if doubled_exponent % 2 == 0:
        power = 1 << (doubled_exponent // 2)
    else:
        power = math.isqrt(1 << doubled_exponent) + 1
    return n * n + power + 3
