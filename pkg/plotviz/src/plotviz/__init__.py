"""Offline chart rendering for spanner experiment CSVs."""

from .render import PlotSpec, read_rows, render, series_for

__all__ = ["PlotSpec", "read_rows", "render", "series_for"]
