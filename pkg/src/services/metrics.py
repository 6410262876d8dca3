"""Run statistics: energy variance, re-affiliations and the MetricsReport."""
from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np
import pandas as pd

from src.models import ClusterView, NodeState, affiliations

from .radio import MessageKind

SERIES_COLUMNS = [
    "tick",
    "msgs_hello",
    "msgs_weight",
    "msgs_newid",
    "msgs_hpadapt",
    "energy_var",
    "n_clusters",
    "reaffiliations",
    "mean_hp",
]

MESSAGE_COLUMNS = {
    MessageKind.HELLO: "msgs_hello",
    MessageKind.WEIGHT_REPORT: "msgs_weight",
    MessageKind.NEW_ID_ASSIGN: "msgs_newid",
    MessageKind.HP_ADAPT: "msgs_hpadapt",
}


def energy_variance(nodes: Iterable[NodeState]) -> float:
    """Population variance of battery levels over all initially present nodes.

    Dead nodes count at zero.
    """
    levels = [node.battery if node.alive else 0.0 for node in nodes]
    if not levels:
        raise ValueError("energy variance of an empty node set")
    return float(np.var(np.asarray(levels, dtype=float)))


def reaffiliation_count(
    prev: Mapping[int, int | None] | Iterable[ClusterView],
    current: Mapping[int, int | None] | Iterable[ClusterView],
) -> int:
    """Nodes whose attached CH changed while being non-CH in both snapshots.

    Accepts either affiliation maps (node -> CH, a CH maps to itself, None
    for an unattached node) or election results.
    """
    before = prev if isinstance(prev, Mapping) else affiliations(prev)
    after = current if isinstance(current, Mapping) else affiliations(current)
    count = 0
    for node, old_head in before.items():
        if node not in after:
            continue
        new_head = after[node]
        if old_head == node or new_head == node:
            continue
        if old_head != new_head:
            count += 1
    return count


class MetricsRecorder:
    """Accumulates per-tick values and emits one series row per snapshot interval."""

    def __init__(self, interval: int = 1):
        self.interval = interval
        self.series: dict[str, list] = {column: [] for column in SERIES_COLUMNS}
        self._messages = {kind: 0 for kind in MessageKind}
        self._reaffiliations = 0

    def capture(
        self,
        tick: int,
        messages: Mapping[MessageKind, int],
        reaffiliations: int,
        energy_var: float,
        n_clusters: int,
        mean_hp: float,
        final: bool = False,
    ) -> None:
        for kind, count in messages.items():
            self._messages[kind] += count
        self._reaffiliations += reaffiliations
        if tick % self.interval != 0 and not final:
            return
        self.series["tick"].append(tick)
        for kind, column in MESSAGE_COLUMNS.items():
            self.series[column].append(self._messages[kind])
        self.series["energy_var"].append(energy_var)
        self.series["n_clusters"].append(n_clusters)
        self.series["reaffiliations"].append(self._reaffiliations)
        self.series["mean_hp"].append(mean_hp)
        self._messages = {kind: 0 for kind in MessageKind}
        self._reaffiliations = 0


@dataclass
class MetricsReport:
    config: dict[str, Any]
    metadata: dict[str, Any]
    series: dict[str, list]
    messages_by_kind: dict[str, int]
    total_messages: int
    final_energy_variance: float
    total_reaffiliations: int
    lidar_rounds: int
    wca_reelections: int
    initial_ids: list[int] = field(default_factory=list)
    ch_tenure: list[int] = field(default_factory=list)
    serving_tenure: list[int] = field(default_factory=list)
    death_tick: list[int | None] = field(default_factory=list)

    @property
    def duration(self) -> int:
        return int(self.config.get("duration", 0))

    @property
    def seed(self) -> int:
        return int(self.config.get("seed", 0))

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_frame(self) -> pd.DataFrame:
        """Per-tick series, one row per snapshot."""
        return pd.DataFrame(self.series, columns=SERIES_COLUMNS)

    def summary(self) -> dict[str, Any]:
        return {
            "algorithm": self.config.get("algorithm"),
            "seed": self.seed,
            "total_messages": self.total_messages,
            **{f"messages_{kind}": count for kind, count in self.messages_by_kind.items()},
            "final_energy_variance": self.final_energy_variance,
            "total_reaffiliations": self.total_reaffiliations,
            "lidar_rounds": self.lidar_rounds,
            "wca_reelections": self.wca_reelections,
            "max_ch_tenure": max(self.ch_tenure, default=0),
            "max_serving_tenure": max(self.serving_tenure, default=0),
            "dead_nodes": sum(1 for t in self.death_tick if t is not None),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> MetricsReport:
        return cls(**data)


def summarize_sweep(reports: Iterable[MetricsReport]) -> pd.DataFrame:
    """Mean total messages and final energy variance per (algorithm, speed_max) over seeds."""
    rows = [
        {
            "algorithm": r.config["algorithm"],
            "speed_max": r.config["speed_max"],
            "seed": r.seed,
            "total_messages": r.total_messages,
            "final_energy_variance": r.final_energy_variance,
        }
        for r in reports
    ]
    frame = pd.DataFrame(rows, columns=["algorithm", "speed_max", "seed", "total_messages", "final_energy_variance"])
    return (
        frame.groupby(["algorithm", "speed_max"], sort=False)
        .agg(
            mean_total_messages=("total_messages", "mean"),
            mean_final_energy_variance=("final_energy_variance", "mean"),
        )
        .reset_index()
    )


def average_series(reports: Iterable[MetricsReport]) -> pd.DataFrame:
    """Pointwise mean of the per-tick series over seeds, per (algorithm, speed_max)."""
    frames = []
    for r in reports:
        frame = r.to_frame()
        frame.insert(0, "speed_max", r.config["speed_max"])
        frame.insert(0, "algorithm", r.config["algorithm"])
        frames.append(frame)
    if not frames:
        return pd.DataFrame(columns=["algorithm", "speed_max", *SERIES_COLUMNS])
    return (
        pd.concat(frames, ignore_index=True)
        .groupby(["algorithm", "speed_max", "tick"], sort=False)
        .mean(numeric_only=True)
        .reset_index()
    )
