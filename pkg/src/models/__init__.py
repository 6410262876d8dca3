from .config import (
    Algorithm,
    SimConfig,
    TICK_SECONDS,
    config_from_dict,
    find_violations,
    load_config,
    validate_config,
    with_overrides,
)
from .errors import ConfigError, ConfigViolation, ReassignmentError
from .nodes import (
    ClusterView,
    NodeId,
    NodeState,
    Role,
    Snapshot,
    TopologyHistory,
    affiliations,
    apply_clusters,
    assert_unique_ids,
    nodes_by_id,
)

__all__ = [
    "Algorithm",
    "SimConfig",
    "TICK_SECONDS",
    "config_from_dict",
    "find_violations",
    "load_config",
    "validate_config",
    "with_overrides",
    "ConfigError",
    "ConfigViolation",
    "ReassignmentError",
    "ClusterView",
    "NodeId",
    "NodeState",
    "Role",
    "Snapshot",
    "TopologyHistory",
    "affiliations",
    "apply_clusters",
    "assert_unique_ids",
    "nodes_by_id",
]
