"""CLI: plot one metric column from a results/efficiency CSV.

Usage: plotviz <results.csv> --metric <name> --out <file.png|.svg>
"""
from __future__ import annotations

import argparse

from .render import PlotSpec, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotviz", description="Render a line chart from an experiment CSV."
    )
    parser.add_argument("csv", help="results.csv or efficiency.csv from the harness")
    parser.add_argument("--metric", required=True, help="metric column to plot")
    parser.add_argument("--out", required=True, help="output image (.png or .svg)")
    args = parser.parse_args(argv)
    render(PlotSpec(args.csv, args.metric, args.out))
    print(args.out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
