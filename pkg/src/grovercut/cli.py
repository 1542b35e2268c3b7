"""Command-line interface.

Subcommands: ``gen`` (write an instance file), ``run`` (one method on one
instance), ``bench`` (experiment suites), ``budget`` (qubit accounting).
Exit codes: 0 success, 1 usage error, 2 qubit capacity exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from .bench import (
    BenchOptions,
    parse_graph_spec,
    run_row,
    suite_complete,
    suite_er,
    summary_text,
    write_rows,
)
from .budget import qubit_bound, qubit_budget
from .errors import CapacityError
from .graphs import format_edge_list

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAPACITY = 2

_MODE_NAMES = {"paper": "paper_fixed", "adaptive": "adaptive"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on bad usage instead of argparse's 2
        raise _UsageError(message)


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="base 64-bit seed (default 0)")
    p.add_argument("--repeats", type=int, default=None)
    p.add_argument("--max-part-size", type=int, default=None)
    p.add_argument("--qubit-cap", type=int, default=None)
    p.add_argument("--iteration-mode", choices=("paper", "adaptive"), default=None)
    p.add_argument("--polish", action="store_true", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("csv", "md"), default="csv")


def _build_parser() -> _Parser:
    parser = _Parser(prog="grovercut", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate an instance and write the edge list")
    p_gen.add_argument("--graph", required=True, help="complete:n[:w] | er:n:p:seed | file:path")
    p_gen.add_argument("--out", type=str, default=None, help="default: stdout")

    p_run = sub.add_parser("run", help="run one method on one instance")
    p_run.add_argument(
        "--method", required=True, choices=("qga", "dnc", "gw", "brute", "random")
    )
    p_run.add_argument("--graph", required=True)
    _add_run_flags(p_run)

    p_bench = sub.add_parser("bench", help="run an experiment suite")
    p_bench.add_argument("--suite", choices=("complete", "er"), default=None)
    p_bench.add_argument("--sizes", type=str, default=None, help="e.g. 3,5,8,12")
    p_bench.add_argument("--specs", type=str, default=None, help="e.g. 50:0.5,100:0.25")
    p_bench.add_argument("--config", type=str, default=None, help="TOML suite config")
    _add_run_flags(p_bench)

    p_budget = sub.add_parser("budget", help="qubit budget arithmetic")
    p_budget.add_argument("--vertices", type=int, default=None)
    p_budget.add_argument("--value-bits", type=int, default=1)
    p_budget.add_argument("--fitness-bits", type=int, default=None)
    p_budget.add_argument("--iters", type=int, default=None)
    p_budget.add_argument("--bound", type=int, default=None, help="evaluate g(n) instead")
    return parser


def _options_from(args, config: dict) -> BenchOptions:
    def pick(cli_value, key, fallback):
        if cli_value is not None:
            return cli_value
        return config.get(key, fallback)

    mode = pick(args.iteration_mode, "iteration_mode", "adaptive")
    return BenchOptions(
        qubit_cap=pick(args.qubit_cap, "qubit_cap", 26),
        max_part_size=pick(args.max_part_size, "max_part_size", 8),
        iteration_mode=_MODE_NAMES.get(mode, mode),
        polish=bool(pick(args.polish, "polish", False)),
        workers=pick(args.workers, "workers", 1),
    )


def _cmd_gen(args) -> int:
    text = format_edge_list(parse_graph_spec(args.graph))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_run(args) -> int:
    opts = _options_from(args, {})
    repeats = args.repeats or 1
    seed = args.seed if args.seed is not None else 0
    rows = [run_row(args.method, args.graph, seed + i, opts) for i in range(repeats)]
    shown = ("assignment", "reference_kind")
    print(summary_text([{k: r[k] for k in r if k not in shown} for r in rows]))
    if args.out:
        write_rows(rows, args.out, args.format)
    return EXIT_OK


def _cmd_bench(args) -> int:
    config = {}
    if args.config:
        config = tomllib.loads(Path(args.config).read_text()).get("bench", {})
    suite = args.suite or config.get("suite")
    if suite not in ("complete", "er"):
        raise _UsageError("bench needs --suite complete|er (or a config file)")
    opts = _options_from(args, config)
    seed = args.seed if args.seed is not None else config.get("seed", 0)
    repeats = args.repeats or config.get("repeats", 5)

    if suite == "complete":
        sizes_text = args.sizes or config.get("sizes")
        if isinstance(sizes_text, str):
            sizes = [int(s) for s in sizes_text.split(",") if s]
        else:
            sizes = [int(s) for s in (sizes_text or (3, 5, 8, 12))]
        result = suite_complete(sizes, repeats, seed, opts)
    else:
        specs_text = args.specs or config.get("specs")
        if isinstance(specs_text, str):
            specs = []
            for item in specs_text.split(","):
                n, p = item.split(":")
                specs.append((int(n), float(p)))
        elif specs_text:
            specs = [(int(n), float(p)) for n, p in specs_text]
        else:
            specs = [(50, 0.5)]
        result = suite_er(specs, repeats, seed, opts)

    print(summary_text(result.summary))
    if args.out:
        write_rows(result.rows, args.out, args.format)
    return EXIT_OK


def _cmd_budget(args) -> int:
    if args.bound is not None:
        print(qubit_bound(args.bound))
        return EXIT_OK
    if args.vertices is None or args.fitness_bits is None or args.iters is None:
        raise _UsageError("budget needs --vertices, --fitness-bits and --iters (or --bound)")
    b = qubit_budget(args.vertices, args.value_bits, args.fitness_bits, args.iters)
    print(b.total)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "gen": _cmd_gen,
            "run": _cmd_run,
            "bench": _cmd_bench,
            "budget": _cmd_budget,
        }[args.command]
        return handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
