import json
from pathlib import Path

import pandas as pd

from src.services import MetricsReport


class ReportStore:
    """Writes run reports and sweep tables under one output directory."""

    def __init__(self, out_dir: str | Path):
        self.root = Path(out_dir)
        self.root.mkdir(parents=True, exist_ok=True)

    def _dir(self, subdir: str | None) -> Path:
        path = self.root / subdir if subdir else self.root
        path.mkdir(parents=True, exist_ok=True)
        return path

    # Runs
    def save_run(self, report: MetricsReport, subdir: str | None = None) -> tuple[Path, Path]:
        """Write run_<seed>.json (full report) and run_<seed>.csv (series)."""
        target = self._dir(subdir)
        json_path = target / f"run_{report.seed}.json"
        csv_path = target / f"run_{report.seed}.csv"
        json_path.write_text(report.to_json(), encoding="utf-8")
        report.to_frame().to_csv(csv_path, index=False, lineterminator="\n")
        return json_path, csv_path

    def load_run(self, seed: int, subdir: str | None = None) -> MetricsReport:
        path = (self.root / subdir if subdir else self.root) / f"run_{seed}.json"
        return MetricsReport.from_dict(json.loads(path.read_text(encoding="utf-8")))

    # Sweeps
    def save_sweep(self, table: pd.DataFrame) -> Path:
        path = self.root / "sweep.csv"
        table.to_csv(path, index=False, lineterminator="\n")
        return path

    def save_sweep_series(self, table: pd.DataFrame) -> Path:
        path = self.root / "sweep_series.csv"
        table.to_csv(path, index=False, lineterminator="\n")
        return path
