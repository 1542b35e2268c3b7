#!/usr/bin/env python3
"""Desk-scale complete-graph comparison table.

Runs the contracted search and the rounding baseline over K_n for a sweep
of sizes, printing the summary and writing per-run rows to results/.
"""

import argparse
from pathlib import Path

from grovercut.bench import BenchOptions, suite_complete, summary_text, write_rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="3,5,8,12,16,23")
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-part-size", type=int, default=6)
    parser.add_argument("--out-dir", default="results")
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    opts = BenchOptions(max_part_size=args.max_part_size)
    result = suite_complete(sizes, args.repeats, args.seed, opts)
    print(summary_text(result.summary))

    out_dir = Path(args.out_dir)
    out_dir.mkdir(exist_ok=True)
    write_rows(result.rows, out_dir / "complete_table.csv", "csv")
    write_rows(result.rows, out_dir / "complete_table.md", "md")
    print(f"\nper-run rows in {out_dir}/complete_table.csv")


if __name__ == "__main__":
    main()
