from .clustering import (
    FORMATION_ROUNDS,
    IdAssignment,
    WcaParams,
    WeightEntry,
    adapt_hp,
    compute_weight,
    elect,
    formation_rounds,
    hd_elect,
    lid_elect,
    mobility_rate,
    reassign_ids,
    tht_distance,
    wca_lite_elect,
    wca_maintain,
    wca_scores,
)
from .energy import EnergyParams, step_energy
from .engine import Simulation, place_nodes, run
from .metrics import (
    SERIES_COLUMNS,
    MetricsRecorder,
    MetricsReport,
    average_series,
    energy_variance,
    reaffiliation_count,
    summarize_sweep,
)
from .mobility import MobilityParams, draw_velocities, reflect, step_mobility
from .radio import (
    BROADCAST,
    ControlMessage,
    Delivery,
    MessageKind,
    RadioHarness,
    TrafficLedger,
    deliver,
    neighbor_snapshot,
    neighborhood,
)

__all__ = [
    "FORMATION_ROUNDS",
    "IdAssignment",
    "WcaParams",
    "WeightEntry",
    "adapt_hp",
    "compute_weight",
    "elect",
    "formation_rounds",
    "hd_elect",
    "lid_elect",
    "mobility_rate",
    "reassign_ids",
    "tht_distance",
    "wca_lite_elect",
    "wca_maintain",
    "wca_scores",
    "EnergyParams",
    "step_energy",
    "Simulation",
    "place_nodes",
    "run",
    "SERIES_COLUMNS",
    "MetricsRecorder",
    "MetricsReport",
    "energy_variance",
    "reaffiliation_count",
    "average_series",
    "summarize_sweep",
    "MobilityParams",
    "draw_velocities",
    "reflect",
    "step_mobility",
    "BROADCAST",
    "ControlMessage",
    "Delivery",
    "MessageKind",
    "RadioHarness",
    "TrafficLedger",
    "deliver",
    "neighbor_snapshot",
    "neighborhood",
]
