"""Command line entry point: experiments, save replay, and the service."""

from __future__ import annotations

import argparse
import statistics
import sys
from pathlib import Path

from .errors import DecodokuError
from .experiments import (
    ExperimentConfig,
    SurvivalConfig,
    run_logical_experiment,
    run_survival_experiment,
    wilson_interval,
)
from .lattice import LatticeSpec


def _lattice(arg: str, d: int) -> LatticeSpec:
    try:
        w, h = arg.lower().split("x")
        return LatticeSpec(width=int(w), height=int(h), d=d)
    except ValueError as exc:
        raise SystemExit(f"bad --lattice {arg!r}: {exc}")


def _p_list(arg: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in arg.split(",") if tok)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--lattice", default="8x8", help="plaquette grid, WxH")
    sub.add_argument("--d", type=int, default=10, help="qudit dimension")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", type=Path, default=None, help="CSV output path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="decodoku")
    sub = parser.add_subparsers(dest="command")

    logical = sub.add_parser("logical", help="logical failure rate vs p")
    _add_common(logical)
    logical.add_argument("--p", default="0.02,0.15", help="comma separated p values")
    logical.add_argument("--trials", type=int, default=1000)
    logical.add_argument("--decoder", default="hdrg", choices=["hdrg"])

    survival = sub.add_parser("survival", help="dynamic-game survival scores")
    _add_common(survival)
    survival.add_argument("--policy", default="pairrank", choices=["pairrank", "random"])
    survival.add_argument("--episodes", type=int, default=200)
    survival.add_argument("--cap", type=int, default=10_000)
    survival.add_argument("--spawn-period", type=int, default=1)

    replay = sub.add_parser("replay", help="replay a save file and report the outcome")
    replay.add_argument("file", type=Path)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default=None)
    serve.add_argument("--port", type=int, default=None)
    return parser


def _cmd_logical(args: argparse.Namespace) -> int:
    cfg = ExperimentConfig(
        spec=_lattice(args.lattice, args.d),
        p_values=_p_list(args.p),
        trials=args.trials,
        seed=args.seed,
        decoder=args.decoder,
        out=args.out,
    )
    for row in run_logical_experiment(cfg):
        lo, hi = wilson_interval(row.failures, row.trials)
        print(
            f"p={row.p:<6g} trials={row.trials} failures={row.failures} "
            f"rate={row.rate:.4f} wilson95=[{lo:.4f}, {hi:.4f}]"
        )
    return 0


def _cmd_survival(args: argparse.Namespace) -> int:
    cfg = SurvivalConfig(
        spec=_lattice(args.lattice, args.d),
        policy=args.policy,
        episodes=args.episodes,
        cap=args.cap,
        spawn_period=args.spawn_period,
        seed=args.seed,
        out=args.out,
    )
    rows = run_survival_experiment(cfg)
    if rows:
        scores = [r.moves_survived for r in rows]
        censored = sum(1 for s in scores if s >= cfg.cap)
        print(
            f"policy={cfg.policy} episodes={len(rows)} median={statistics.median(scores)} "
            f"min={min(scores)} max={max(scores)} censored={censored}"
        )
    return 0


def _cmd_replay(args: argparse.Namespace) -> int:
    from .savefile import replay_text

    g = replay_text(args.file.read_text())
    print(f"score={g.score} status={g.status} defects={len(g.syndrome.values)}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import os

    import uvicorn

    from .server import create_app

    host = args.host or os.environ.get("DECODOKU_HOST", "127.0.0.1")
    port = args.port or int(os.environ.get("DECODOKU_PORT", "8000"))
    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--serve" in argv:
        # convenience: `decodoku --serve [--host H --port P]`
        argv.remove("--serve")
        argv.insert(0, "serve")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        handler = {
            "logical": _cmd_logical,
            "survival": _cmd_survival,
            "replay": _cmd_replay,
            "serve": _cmd_serve,
        }[args.command]
        return handler(args)
    except DecodokuError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
