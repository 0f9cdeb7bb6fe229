"""Render line charts from experiment CSVs.

Input schema (produced by the experiment harness): a header row containing at
least `param`, `protocol`, and the requested metric column. Rows are grouped
by protocol (one series each) and averaged per parameter value; nothing else
is computed here.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


@dataclass
class PlotSpec:
    input_csv: Path
    metric: str
    output: Path

    def __post_init__(self):
        self.input_csv = Path(self.input_csv)
        self.output = Path(self.output)


def read_rows(path: Path) -> tuple[list[str], list[dict[str, str]]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path} is empty") from None
        rows = [dict(zip(header, row)) for row in reader if row]
    if not rows:
        raise ValueError(f"{path} has a header but no data rows")
    return header, rows


def series_for(rows: list[dict[str, str]], metric: str) -> dict[str, tuple[list, list]]:
    """protocol -> (sorted params, per-param means of the metric)."""
    grouped: dict[str, dict[float, list[float]]] = {}
    for row in rows:
        grouped.setdefault(row["protocol"], {}).setdefault(
            float(row["param"]), []
        ).append(float(row[metric]))
    out = {}
    for protocol in sorted(grouped):
        params = sorted(grouped[protocol])
        means = [sum(grouped[protocol][p]) / len(grouped[protocol][p]) for p in params]
        out[protocol] = (params, means)
    return out


def render(spec: PlotSpec):
    """Write one line chart (x = parameter, one series per protocol) and
    return the matplotlib Figure for inspection."""
    header, rows = read_rows(spec.input_csv)
    for required in ("param", "protocol", spec.metric):
        if required not in header:
            raise ValueError(f"column {required!r} not present in {spec.input_csv}")
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for protocol, (params, means) in series_for(rows, spec.metric).items():
        ax.plot(params, means, marker="o", label=protocol)
    ax.set_xlabel("stretch parameter")
    ax.set_ylabel(spec.metric)
    ax.set_title(spec.metric.replace("_", " "))
    ax.legend()
    fig.tight_layout()
    spec.output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output)
    return fig
