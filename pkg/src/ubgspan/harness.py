"""Experiment runner: seeded instances, protocol/parameter sweeps, efficiency
tables, CSV emission, and deterministic replay of serialized instances.

CSV schemas (stable column order):
  results.csv    seed,param,protocol,max_degree,size,weight,lightness,
                 max_stretch,rounds,crossings
  efficiency.csv param,protocol,efficiency_max_degree,efficiency_size,
                 efficiency_weight
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

from .graph import EdgeList, UnitBallGraph, build_ubg
from .metric import PointSet, generate_uniform_square
from .protocols import (
    ProtocolResult,
    congest_spanner,
    distributed_euclidean_spanner,
    distributed_spanner,
)
from .spanner import Spanner, centralized_euclidean_spanner
from .verify import (
    STRETCH_TOL,
    check_stretch,
    crossing_report,
    degree_report,
    full_report,
    lightness,
    Report,
)

PROTOCOLS = ("local", "congest", "euclid")

RESULTS_COLUMNS = [
    "seed",
    "param",
    "protocol",
    "max_degree",
    "size",
    "weight",
    "lightness",
    "max_stretch",
    "rounds",
    "crossings",
]
EFFICIENCY_COLUMNS = [
    "param",
    "protocol",
    "efficiency_max_degree",
    "efficiency_size",
    "efficiency_weight",
]


class VerificationError(RuntimeError):
    def __init__(self, message: str, instance_path: Path | None = None):
        super().__init__(message)
        self.instance_path = instance_path


@dataclass
class ExperimentConfig:
    seeds: list[int]
    params: list[float]  # t values for euclid, eps values otherwise
    protocol: str
    n: int = 100
    side: float = 5.0
    out: Path = Path("results")

    def __post_init__(self):
        self.out = Path(self.out)
        if self.protocol not in PROTOCOLS:
            raise ValueError(f"protocol must be one of {PROTOCOLS}")
        if not self.seeds:
            raise ValueError("seed list must be non-empty")
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("seeds must be distinct")
        if not self.params:
            raise ValueError("parameter list must be non-empty")
        for p in self.params:
            if self.protocol == "euclid" and p <= 1:
                raise ValueError("t values must exceed 1")
            if self.protocol != "euclid" and not (0 < p <= 1):
                raise ValueError("eps values must lie in (0, 1]")
        if self.n < 1 or self.side <= 0:
            raise ValueError("need n >= 1 and side > 0")

    @property
    def model(self) -> str:
        return "CONGEST" if self.protocol == "congest" else "LOCAL"

    @classmethod
    def from_file(cls, path: str | Path, **overrides) -> "ExperimentConfig":
        """Key=value config file; later CLI overrides win."""
        values: dict = {}
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line {lineno}: {raw!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            values[key] = val
        merged = {**values, **{k: v for k, v in overrides.items() if v is not None}}
        return cls.from_strings(**merged)

    @classmethod
    def from_strings(cls, **kw) -> "ExperimentConfig":
        def ints(v):
            return [int(x) for x in str(v).split(",") if x != ""]

        def floats(v):
            return [float(x) for x in str(v).split(",") if x != ""]

        params = kw.get("t") if kw.get("t") not in (None, "") else kw.get("eps")
        if params is None:
            raise ValueError("one of t= or eps= is required")
        return cls(
            seeds=ints(kw["seeds"]),
            params=floats(params),
            protocol=str(kw["protocol"]),
            n=int(kw.get("n", 100)),
            side=float(kw.get("side", 5.0)),
            out=Path(kw.get("out", "results")),
        )


def _fmt(x) -> str:
    return repr(x) if isinstance(x, float) else str(x)


def _write_csv(path: Path, columns: list[str], rows: list[dict]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in columns])
    path.write_text(buf.getvalue())


def export_instance(
    path: Path, ps: PointSet, spanner: Spanner, meta: dict
) -> Path:
    payload = {
        "meta": meta,
        "points_csv": ps.to_csv(),
        "edges_csv": spanner.edges.to_csv(),
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True))
    return path


def replay(path: str | Path) -> Report:
    """Deterministic re-verification of a serialized instance."""
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed instance file {path}: {exc}") from exc
    for key in ("meta", "points_csv", "edges_csv"):
        if key not in payload:
            raise ValueError(f"instance file {path} missing {key!r}")
    ps = PointSet.from_csv(payload["points_csv"])
    edges = EdgeList.from_csv(payload["edges_csv"])
    meta = payload["meta"]
    g = build_ubg(ps, 1.0)
    spanner = Spanner(ps, edges, float(meta.get("bound", 1.0)))
    return full_report(g, spanner)


def _run_protocol(cfg: ExperimentConfig, g: UnitBallGraph, param: float, seed: int) -> ProtocolResult:
    if cfg.protocol == "local":
        return distributed_spanner(g, param, seed=seed)
    if cfg.protocol == "congest":
        return congest_spanner(g, param, seed=seed)
    return distributed_euclidean_spanner(g, param, seed=seed)


def _row(
    seed: int, param: float, protocol: str, g: UnitBallGraph, s: Spanner, rounds: int
) -> dict:
    cross = crossing_report(s)
    return {
        "seed": seed,
        "param": param,
        "protocol": protocol,
        "max_degree": degree_report(s).max_degree,
        "size": len(s.edges),
        "weight": s.weight(),
        "lightness": lightness(g, s),
        "max_stretch": check_stretch(g, s),
        "rounds": rounds,
        "crossings": cross.total,
    }


def _verify_or_abort(
    cfg: ExperimentConfig, g: UnitBallGraph, s: Spanner, bound: float, meta: dict
) -> float:
    stretch = check_stretch(g, s)
    over_unit = [e for e in s.edges if e[2] > 1.0]
    if stretch <= bound + STRETCH_TOL and not over_unit:
        return stretch
    cfg.out.mkdir(parents=True, exist_ok=True)
    dump = cfg.out / f"failed-{meta['protocol']}-seed{meta['seed']}-param{meta['param']}.json"
    export_instance(dump, g.points, s, meta)
    raise VerificationError(
        f"verification failed for {meta}: stretch={stretch}, "
        f"over-unit edges={len(over_unit)}; instance saved to {dump}",
        dump,
    )


def run_experiment(cfg: ExperimentConfig) -> tuple[Path, Path]:
    """Sweep (seed, param): run the centralized greedy baseline and the chosen
    protocol on the same instance, verify both, emit result and efficiency CSVs."""
    cfg.out.mkdir(parents=True, exist_ok=True)
    rows: list[dict] = []
    by_param: dict[float, list[dict]] = {}
    for seed in sorted(cfg.seeds):
        ps = generate_uniform_square(cfg.n, cfg.side, seed)
        g = build_ubg(ps, 1.0)
        for param in sorted(cfg.params):
            bound = param if cfg.protocol == "euclid" else 1.0 + param
            meta = {
                "protocol": cfg.protocol,
                "seed": seed,
                "param": param,
                "bound": bound,
                "n": cfg.n,
                "side": cfg.side,
            }
            baseline = centralized_euclidean_spanner(g, bound)
            _verify_or_abort(cfg, g, baseline, bound, {**meta, "protocol": "greedy"})
            res = _run_protocol(cfg, g, param, seed)
            _verify_or_abort(cfg, g, res.spanner, bound, meta)
            brow = _row(seed, param, "greedy", g, baseline, 0)
            prow = _row(seed, param, cfg.protocol, g, res.spanner, res.rounds)
            rows += [brow, prow]
            by_param.setdefault(param, []).append(
                {
                    "max_degree": (brow["max_degree"], prow["max_degree"]),
                    "size": (brow["size"], prow["size"]),
                    "weight": (brow["weight"], prow["weight"]),
                }
            )
    rows.sort(key=lambda r: (r["seed"], r["param"], r["protocol"]))
    results_path = cfg.out / "results.csv"
    _write_csv(results_path, RESULTS_COLUMNS, rows)

    from .verify import efficiency

    eff_rows = []
    for param in sorted(by_param):
        cells = by_param[param]
        row = {"param": param, "protocol": cfg.protocol}
        for measure in ("max_degree", "size", "weight"):
            vals = [efficiency(measure, b, a) for b, a in (c[measure] for c in cells)]
            row[f"efficiency_{measure}"] = sum(vals) / len(vals)
        eff_rows.append(row)
    efficiency_path = cfg.out / "efficiency.csv"
    _write_csv(efficiency_path, EFFICIENCY_COLUMNS, eff_rows)
    return results_path, efficiency_path
