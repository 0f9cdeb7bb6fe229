from pathlib import Path

import pytest

from plotviz import PlotSpec, render
from plotviz.cli import main as cli_main

DATA = Path(__file__).parent / "data"


class TestRenderResults:
    def test_three_metric_charts(self, tmp_path):
        # Acceptance: three charts from the golden results.csv, one series per
        # protocol, x-range equal to the swept parameter set.
        for metric in ("max_degree", "size", "weight"):
            spec = PlotSpec(DATA / "results.csv", metric, tmp_path / f"{metric}.png")
            fig = render(spec)
            assert spec.output.exists() and spec.output.stat().st_size > 0
            ax = fig.axes[0]
            lines = ax.get_lines()
            assert len(lines) == 2  # greedy + euclid series
            for line in lines:
                assert list(line.get_xdata()) == [1.1, 1.5, 2.0]
            labels = {line.get_label() for line in lines}
            assert labels == {"greedy", "euclid"}

    def test_efficiency_has_three_metric_columns(self, tmp_path):
        header = (DATA / "efficiency.csv").read_text().splitlines()[0].split(",")
        metrics = [c for c in header if c.startswith("efficiency_")]
        assert len(metrics) == 3
        for metric in metrics:
            fig = render(
                PlotSpec(DATA / "efficiency.csv", metric, tmp_path / f"{metric}.svg")
            )
            ax = fig.axes[0]
            assert len(ax.get_lines()) == 1  # single protocol in this sweep
            assert list(ax.get_lines()[0].get_xdata()) == [1.1, 1.5, 2.0]

    def test_axis_range_covers_sweep(self, tmp_path):
        fig = render(PlotSpec(DATA / "results.csv", "size", tmp_path / "s.png"))
        lo, hi = fig.axes[0].get_xlim()
        assert lo <= 1.1 and hi >= 2.0

    def test_input_never_mutated(self, tmp_path):
        before = (DATA / "results.csv").read_bytes()
        render(PlotSpec(DATA / "results.csv", "weight", tmp_path / "w.png"))
        assert (DATA / "results.csv").read_bytes() == before


class TestErrors:
    def test_missing_column_named(self, tmp_path):
        with pytest.raises(ValueError, match="wobble"):
            render(PlotSpec(DATA / "results.csv", "wobble", tmp_path / "x.png"))

    def test_empty_csv(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        with pytest.raises(ValueError, match="empty"):
            render(PlotSpec(empty, "size", tmp_path / "x.png"))

    def test_header_only_csv(self, tmp_path):
        header_only = tmp_path / "h.csv"
        header_only.write_text("seed,param,protocol,size\n")
        with pytest.raises(ValueError, match="no data rows"):
            render(PlotSpec(header_only, "size", tmp_path / "x.png"))


class TestCli:
    def test_end_to_end(self, tmp_path, capsys):
        out = tmp_path / "chart.png"
        rc = cli_main([str(DATA / "results.csv"), "--metric", "size", "--out", str(out)])
        assert rc == 0
        assert out.exists()
        assert str(out) in capsys.readouterr().out
