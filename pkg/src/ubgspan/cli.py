"""Command line entry point: `ubgspan run` for sweeps, `ubgspan replay` for
re-verifying a serialized instance."""
from __future__ import annotations

import argparse
import sys

from .harness import ExperimentConfig, replay, run_experiment


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ubgspan",
        description="Unit-ball-graph spanner experiments (centralized baseline "
        "vs LOCAL/CONGEST protocols).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a seeded sweep and emit CSVs")
    run_p.add_argument("--config", help="key=value config file; flags override")
    run_p.add_argument("--n", type=int, help="points per instance (default 100)")
    run_p.add_argument("--side", type=float, help="square side length (default 5)")
    run_p.add_argument("--seeds", help="comma-separated seed list, e.g. 0,1,2")
    run_p.add_argument("--t", help="comma-separated stretch factors (euclid)")
    run_p.add_argument("--eps", help="comma-separated eps values (local/congest)")
    run_p.add_argument("--protocol", choices=["local", "congest", "euclid"])
    run_p.add_argument("--out", help="output directory (default ./results)")

    replay_p = sub.add_parser("replay", help="re-verify a serialized instance")
    replay_p.add_argument("instance", help="instance JSON written by the harness")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "replay":
        report = replay(args.instance)
        print(report.to_json())
        return 0
    overrides = {
        "n": args.n,
        "side": args.side,
        "seeds": args.seeds,
        "t": args.t,
        "eps": args.eps,
        "protocol": args.protocol,
        "out": args.out,
    }
    if args.config:
        cfg = ExperimentConfig.from_file(args.config, **overrides)
    else:
        missing = [k for k in ("seeds", "protocol") if overrides.get(k) is None]
        if missing or (args.t is None and args.eps is None):
            print(
                f"missing required flags (need --seeds, --protocol, and --t or --eps)",
                file=sys.stderr,
            )
            return 2
        cfg = ExperimentConfig.from_strings(
            **{k: v for k, v in overrides.items() if v is not None}
        )
    results, eff = run_experiment(cfg)
    print(results)
    print(eff)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
