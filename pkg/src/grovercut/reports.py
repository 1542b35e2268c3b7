"""Benchmark run records."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .graphs import CutAssignment, Graph, cut_value

METHODS = ("qga", "dnc", "gw", "brute", "random")


@dataclass(frozen=True)
class RunReport:
    """One solver run: what was found, how, and at what cost.

    ``best_value`` is always recomputed from ``assignment`` on the original
    graph by the builder below; solvers may not report a value their
    assignment does not achieve. Seeds feed the package-wide Philox
    generator (see ``rng``), so a report is reproducible from
    (method, instance, seed) alone. ``wall_ms`` is informational only.
    """

    method: str
    best_value: int
    assignment: CutAssignment
    oracle_calls: int
    measurements: int
    qubits_used: int
    seed: int
    wall_ms: int
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}, expected one of {METHODS}")


def build_report(
    g: Graph,
    method: str,
    assignment: CutAssignment,
    *,
    oracle_calls: int = 0,
    measurements: int = 0,
    qubits_used: int = 0,
    seed: int = 0,
    wall_ms: int = 0,
    details: dict[str, Any] | None = None,
) -> RunReport:
    """Build a report with ``best_value`` recomputed from the assignment."""
    return RunReport(
        method=method,
        best_value=cut_value(g, assignment),
        assignment=assignment,
        oracle_calls=int(oracle_calls),
        measurements=int(measurements),
        qubits_used=int(qubits_used),
        seed=int(seed),
        wall_ms=int(wall_ms),
        details=details or {},
    )
