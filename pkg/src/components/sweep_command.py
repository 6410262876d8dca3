import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from src.database import ReportStore
from src.models import ConfigError, SimConfig, validate_config, with_overrides
from src.services import MetricsReport, average_series, run, summarize_sweep

from .run_command import EXIT_INVALID, EXIT_IO, EXIT_OK, resolve_config

logger = logging.getLogger(__name__)

DEFAULT_SEED_COUNT = 5


def sweep_configs(base: SimConfig, algorithms: list[str], speeds: list[float], seeds: list[int]) -> list[SimConfig]:
    """Full cross product algorithm × speed_max × seed, validated."""
    return [
        validate_config(with_overrides(base, algorithm=algorithm, speed_max=speed, seed=seed))
        for algorithm in algorithms
        for speed in speeds
        for seed in seeds
    ]


def run_all(configs: list[SimConfig], workers: int = 1) -> list[MetricsReport]:
    """Run independent configs, in a process pool when workers > 1. Order is preserved."""
    if workers <= 1 or len(configs) <= 1:
        return [run(cfg) for cfg in configs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, configs))


def run_subdir(report: MetricsReport) -> str:
    return f"{report.config['algorithm']}_speed{report.config['speed_max']:g}"


def cmd_sweep(
    config_path: str | Path | None,
    algorithms: list[str],
    speeds: list[float] | None,
    seeds: list[int] | None,
    out_dir: str | Path,
    overrides: dict | None = None,
    workers: int = 1,
) -> int:
    """Run the sweep and write per-run reports, sweep.csv and sweep_series.csv."""
    try:
        base = resolve_config(config_path, overrides or {})
        speeds = speeds or [base.speed_max]
        seeds = seeds or [base.seed + i for i in range(DEFAULT_SEED_COUNT)]
        configs = sweep_configs(base, [a.upper() for a in algorithms], speeds, seeds)
    except ConfigError as e:
        print(str(e), file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"Cannot read config: {e}", file=sys.stderr)
        return EXIT_IO

    try:
        store = ReportStore(out_dir)
    except OSError as e:
        print(f"Cannot use output directory {out_dir}: {e}", file=sys.stderr)
        return EXIT_IO

    logger.info("sweep: %d algorithms x %d speeds x %d seeds = %d runs",
                len(algorithms), len(speeds), len(seeds), len(configs))
    reports = run_all(configs, workers)
    table = summarize_sweep(reports)

    try:
        for report in reports:
            store.save_run(report, subdir=run_subdir(report))
        store.save_sweep(table)
        store.save_sweep_series(average_series(reports))
    except OSError as e:
        print(f"Error writing sweep results: {e}", file=sys.stderr)
        return EXIT_IO

    print(table.to_string(index=False))
    return EXIT_OK
