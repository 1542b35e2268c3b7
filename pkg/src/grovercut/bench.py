"""Experiment harness: instance specs, method dispatch, suites, reports.

Graph specs are compact strings: ``complete:n`` (optionally ``complete:n:w``),
``er:n:p:seed``, or ``file:path``. Every run row records enough to be
recomputed: the persisted assignment achieves exactly the reported value.
All columns except wall_ms are deterministic for a fixed command and seed.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import get_context
from pathlib import Path
from typing import Sequence

from .dnc import DncConfig, dnc_maxcut
from .graphs import (
    Graph,
    brute_force_maxcut,
    complete_graph_optimum,
    generate_complete,
    generate_erdos_renyi,
    load_graph,
    lower_bound,
    random_cut_baseline,
)
from .gw import GwConfig, gw_maxcut
from .qga import QgaConfig, run_qga_maxcut
from .reports import RunReport, build_report

CSV_COLUMNS = (
    "instance",
    "method",
    "seed",
    "value",
    "optimum_or_bound",
    "ratio",
    "qubits",
    "oracle_calls",
    "wall_ms",
    "boundary_weight_lost",
)


@dataclass(frozen=True)
class BenchOptions:
    qubit_cap: int = 26
    max_part_size: int = 8
    meta_brute_limit: int = 20
    iteration_mode: str = "adaptive"
    polish: bool = False
    shots_per_round: int = 32
    stagnation_limit: int = 3
    max_rounds: int = 40
    gw_trials: int = 64
    random_trials: int = 1000
    brute_cutoff: int = 16
    workers: int = 1


def parse_graph_spec(spec: str) -> Graph:
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind == "complete" and len(parts) in (2, 3):
            n = int(parts[1])
            w = int(parts[2]) if len(parts) == 3 else 1
            return generate_complete(n, w)
        if kind == "er" and len(parts) == 4:
            return generate_erdos_renyi(int(parts[1]), float(parts[2]), int(parts[3]))
        if kind == "file" and len(parts) >= 2:
            return load_graph(":".join(parts[1:]))
    except (ValueError, OSError) as exc:
        raise ValueError(f"bad graph spec {spec!r}: {exc}") from exc
    raise ValueError(
        f"bad graph spec {spec!r}; expected complete:n[:w], er:n:p:seed, or file:path"
    )


def _qga_config(opts: BenchOptions, seed: int) -> QgaConfig:
    return QgaConfig(
        seed=seed,
        max_rounds=opts.max_rounds,
        stagnation_limit=opts.stagnation_limit,
        shots_per_round=opts.shots_per_round,
        iteration_mode=opts.iteration_mode,
        qubit_cap=opts.qubit_cap,
    )


def run_method(method: str, g: Graph, seed: int, opts: BenchOptions) -> RunReport:
    if method == "qga":
        return run_qga_maxcut(g, _qga_config(opts, seed))
    if method == "dnc":
        cfg = DncConfig(
            seed=seed,
            max_part_size=opts.max_part_size,
            meta_brute_limit=opts.meta_brute_limit,
            polish=opts.polish,
            qubit_cap=opts.qubit_cap,
            qga=_qga_config(opts, seed),
        )
        return dnc_maxcut(g, cfg)
    if method == "gw":
        return gw_maxcut(g, GwConfig(seed=seed, trials=opts.gw_trials))
    if method == "brute":
        start = time.perf_counter()
        assignment, _ = brute_force_maxcut(g)
        return build_report(
            g, "brute", assignment,
            oracle_calls=1 << max(0, g.num_vertices - 1),
            seed=seed, wall_ms=int(1000 * (time.perf_counter() - start)),
        )
    if method == "random":
        start = time.perf_counter()
        assignment, _ = random_cut_baseline(g, opts.random_trials, seed)
        return build_report(
            g, "random", assignment,
            measurements=opts.random_trials,
            seed=seed, wall_ms=int(1000 * (time.perf_counter() - start)),
        )
    raise ValueError(f"unknown method {method!r}")


def reference_value(spec: str, g: Graph, opts: BenchOptions) -> tuple[Fraction, str]:
    """Exact optimum where known or cheap, else the W/2 lower bound."""
    parts = spec.split(":")
    if parts[0] == "complete":
        n = int(parts[1])
        w = int(parts[2]) if len(parts) == 3 else 1
        return Fraction(complete_graph_optimum(n, w)), "optimum"
    if g.num_vertices <= opts.brute_cutoff:
        _, value = brute_force_maxcut(g)
        return Fraction(value), "optimum"
    return lower_bound(g), "bound"


def _format_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return str(float(x))


def run_row(method: str, spec: str, seed: int, opts: BenchOptions) -> dict:
    g = parse_graph_spec(spec)
    report = run_method(method, g, seed, opts)
    ref, ref_kind = reference_value(spec, g, opts)
    ratio = "" if ref == 0 else f"{float(Fraction(report.best_value) / ref):.6f}"
    return {
        "instance": spec,
        "method": method,
        "seed": seed,
        "value": report.best_value,
        "optimum_or_bound": _format_fraction(ref),
        "ratio": ratio,
        "qubits": report.qubits_used,
        "oracle_calls": report.oracle_calls,
        "wall_ms": report.wall_ms,
        "boundary_weight_lost": report.details.get("boundary_weight", 0),
        "assignment": report.assignment.to_string(),
        "reference_kind": ref_kind,
    }


def _run_task(args: tuple) -> dict:
    method, spec, seed, opts = args
    return run_row(method, spec, seed, opts)


def run_many(tasks: Sequence[tuple[str, str, int]], opts: BenchOptions) -> list[dict]:
    """Run (method, spec, seed) tasks, optionally across worker processes."""
    packed = [(m, s, sd, opts) for m, s, sd in tasks]
    if opts.workers <= 1 or len(packed) <= 1:
        return [_run_task(t) for t in packed]
    with ProcessPoolExecutor(
        max_workers=opts.workers, mp_context=get_context("spawn")
    ) as pool:
        return list(pool.map(_run_task, packed))


@dataclass
class SuiteResult:
    rows: list[dict] = field(default_factory=list)
    summary: list[dict] = field(default_factory=list)


def _median(values: list[int]) -> int:
    # lower-middle element for even counts
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def suite_complete(
    sizes: Sequence[int], repeats: int, seed: int, opts: BenchOptions
) -> SuiteResult:
    """Complete-graph comparison: dnc search vs the rounding baseline."""
    tasks = []
    for n in sizes:
        for rep in range(repeats):
            tasks.append(("dnc", f"complete:{n}", seed + rep))
            tasks.append(("gw", f"complete:{n}", seed + rep))
    rows = run_many(tasks, opts)
    result = SuiteResult(rows=rows)
    for n in sizes:
        spec = f"complete:{n}"
        dnc_vals = [r["value"] for r in rows if r["instance"] == spec and r["method"] == "dnc"]
        gw_vals = [r["value"] for r in rows if r["instance"] == spec and r["method"] == "gw"]
        optimum = complete_graph_optimum(n, 1)
        result.summary.append(
            {
                "n": n,
                "optimum": optimum,
                "qga_value": _median(dnc_vals),
                "gw_value": _median(gw_vals),
                "qga_ratio": f"{_median(dnc_vals) / optimum:.4f}" if optimum else "",
                "gw_ratio": f"{_median(gw_vals) / optimum:.4f}" if optimum else "",
            }
        )
    return result


def suite_er(
    specs: Sequence[tuple[int, float]], repeats: int, seed: int, opts: BenchOptions
) -> SuiteResult:
    """Random-graph comparison; one fixed instance per (n, p) row."""
    tasks = []
    for n, p in specs:
        inst = f"er:{n}:{p:g}:{seed}"
        for rep in range(repeats):
            tasks.append(("dnc", inst, seed + rep))
        tasks.append(("gw", inst, seed))
    rows = run_many(tasks, opts)
    result = SuiteResult(rows=rows)
    for n, p in specs:
        inst = f"er:{n}:{p:g}:{seed}"
        dnc_vals = [r["value"] for r in rows if r["instance"] == inst and r["method"] == "dnc"]
        gw_val = next(r["value"] for r in rows if r["instance"] == inst and r["method"] == "gw")
        med, best = _median(dnc_vals), max(dnc_vals)
        result.summary.append(
            {
                "n": n,
                "p": p,
                "qga_median": med,
                "qga_best": best,
                "gw_value": gw_val,
                "ratio_median": f"{med / gw_val:.4f}" if gw_val else "",
                "ratio_best": f"{best / gw_val:.4f}" if gw_val else "",
            }
        )
    return result


def rows_to_csv(rows: list[dict]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in rows:
        lines.append(",".join(str(r[c]) for c in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def rows_to_markdown(rows: list[dict]) -> str:
    head = "| " + " | ".join(CSV_COLUMNS) + " |"
    sep = "|" + "|".join(" --- " for _ in CSV_COLUMNS) + "|"
    body = ["| " + " | ".join(str(r[c]) for c in CSV_COLUMNS) + " |" for r in rows]
    return "\n".join([head, sep] + body) + "\n"


def summary_text(rows: list[dict]) -> str:
    if not rows:
        return "(no rows)"
    columns = list(rows[0].keys())
    table = [columns] + [[str(r[c]) for c in columns] for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(columns))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line)) for line in table]
    return "\n".join(lines)


def write_rows(rows: list[dict], out: str | Path, fmt: str) -> None:
    """Write the per-run table plus a sidecar with the achieved assignments."""
    out = Path(out)
    text = rows_to_csv(rows) if fmt == "csv" else rows_to_markdown(rows)
    out.write_text(text)
    sidecar = out.with_suffix(out.suffix + ".assignments.txt")
    lines = [
        "\t".join(
            str(x)
            for x in (r["instance"], r["method"], r["seed"], r["value"], r["assignment"])
        )
        for r in rows
    ]
    sidecar.write_text("\n".join(lines) + "\n")
