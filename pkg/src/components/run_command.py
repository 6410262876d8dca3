import logging
import sys
from pathlib import Path

from src.database import ReportStore
from src.models import ConfigError, SimConfig, load_config, validate_config, with_overrides
from src.services import run

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2


def resolve_config(config_path: str | Path | None, overrides: dict) -> SimConfig:
    """Built-in defaults, then the config file, then command-line overrides."""
    cfg = load_config(config_path) if config_path else SimConfig()
    return validate_config(with_overrides(cfg, **overrides))


def print_summary(summary: dict) -> None:
    """Print final aggregates, one key per line."""
    for key, value in summary.items():
        if isinstance(value, float):
            print(f"{key}: {value:.4f}")
        else:
            print(f"{key}: {value}")


def cmd_run(config_path: str | Path | None, overrides: dict, out_dir: str | Path) -> int:
    """Run one simulation and write run_<seed>.json / run_<seed>.csv."""
    try:
        cfg = resolve_config(config_path, overrides)
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

    report = run(cfg)

    try:
        json_path, csv_path = store.save_run(report)
    except OSError as e:
        print(f"Error writing report: {e}", file=sys.stderr)
        return EXIT_IO

    logger.info("wrote %s and %s", json_path, csv_path)
    print_summary(report.summary())
    return EXIT_OK
