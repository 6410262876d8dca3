import argparse
import sys

from dotenv import load_dotenv

from src.components import cmd_run, cmd_sweep
from src.models import Algorithm
from src.utils import configure_logging, get_int_setting, get_setting

ALGORITHMS = [a.value for a in Algorithm]


def add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override its fields")
    parser.add_argument("--nodes", type=int, help="number of mobile hosts (n_nodes)")
    parser.add_argument("--duration", type=int, help="run length in ticks")
    parser.add_argument("--out", default=None, help="output directory (default: $MANET_OUT_DIR or results)")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING (default: $MANET_LOG_LEVEL)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lidarsim",
        description="Simulate MANET clustering with LID, HD, WCA-lite and LIDAR.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", help="run one seeded simulation")
    add_common_flags(run_parser)
    run_parser.add_argument("--algorithm", type=str.upper, choices=ALGORITHMS)
    run_parser.add_argument("--speed-max", type=float, help="maximum node speed in m/s")
    run_parser.add_argument("--seed", type=int)

    sweep_parser = commands.add_parser("sweep", help="algorithm x speed x seed cross product")
    add_common_flags(sweep_parser)
    sweep_parser.add_argument("--algorithm", type=str.upper, choices=ALGORITHMS, nargs="+", default=ALGORITHMS)
    sweep_parser.add_argument("--speed-max", type=float, nargs="+", help="speed_max values to sweep")
    sweep_parser.add_argument("--seed", type=int, help="base seed; default seeds are seed .. seed+4")
    sweep_parser.add_argument("--seeds", type=int, nargs="+", help="explicit replication seeds")
    sweep_parser.add_argument("--workers", type=int, default=None, help="parallel runs (default: $MANET_WORKERS or 1)")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main application entry point."""
    load_dotenv()
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    out_dir = args.out or get_setting("MANET_OUT_DIR", "results")
    overrides = {"n_nodes": args.nodes, "duration": args.duration, "seed": args.seed}

    if args.command == "run":
        overrides.update(algorithm=args.algorithm, speed_max=args.speed_max)
        return cmd_run(args.config, overrides, out_dir)

    workers = args.workers if args.workers is not None else get_int_setting("MANET_WORKERS", 1)
    return cmd_sweep(
        args.config,
        algorithms=args.algorithm,
        speeds=args.speed_max,
        seeds=args.seeds,
        out_dir=out_dir,
        overrides=overrides,
        workers=workers,
    )


if __name__ == "__main__":
    sys.exit(main())
