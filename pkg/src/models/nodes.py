"""Domain types shared by every simulator module."""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum

NodeId = int
Snapshot = Mapping[NodeId, frozenset[NodeId]]


class Role(str, Enum):
    CH = "CH"
    GATEWAY = "Gateway"
    ORDINARY = "Ordinary"


class TopologyHistory:
    """Per-node table of recent neighbour-ID sets, newest row first.

    ``capacity`` is the depth p of the mobility estimate. The table retains
    capacity + 1 rows (at most p + 1), so that p consecutive differences
    exist; older rows are dropped on push.
    """

    def __init__(self, capacity: int, owner: NodeId):
        if capacity < 1:
            raise ValueError(f"THT capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.owner = owner
        self._rows: list[frozenset[NodeId]] = []

    @property
    def rows(self) -> tuple[frozenset[NodeId], ...]:
        return tuple(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def push(self, neighbors: Iterable[NodeId]) -> None:
        """Record the neighbour set observed at the end of one Hello period."""
        row = frozenset(n for n in neighbors if n != self.owner)
        self._rows.insert(0, row)
        del self._rows[self.capacity + 1:]

    def relabel(self, mapping: Mapping[NodeId, NodeId]) -> None:
        """Rewrite stored IDs after an ID reassignment (owner included)."""
        self.owner = mapping.get(self.owner, self.owner)
        self._rows = [frozenset(mapping.get(n, n) for n in row) for row in self._rows]


@dataclass(eq=False)
class NodeState:
    """One mobile host. ``index`` is a stable slot; ``id`` may be reassigned."""

    index: int
    id: NodeId
    pos: tuple[float, float]
    vel: tuple[float, float]
    battery: float
    tht: TopologyHistory
    hp_local: int
    role: Role = Role.ORDINARY
    cluster_of: NodeId | None = None
    alive: bool = True
    next_hello: int = 0
    next_lidar: int = 0
    ch_since: int | None = None
    death_tick: int | None = None

    @property
    def speed(self) -> float:
        return float((self.vel[0] ** 2 + self.vel[1] ** 2) ** 0.5)


@dataclass(frozen=True)
class ClusterView:
    """CH identity plus its attached members; gateways are a subset of members."""

    head: NodeId
    members: frozenset[NodeId] = frozenset()
    gateways: frozenset[NodeId] = frozenset()

    def __post_init__(self):
        if self.head in self.members:
            raise ValueError(f"cluster head {self.head} listed among its own members")
        if not self.gateways <= self.members:
            raise ValueError(f"gateways {sorted(self.gateways - self.members)} are not members of cluster {self.head}")

    @property
    def closed_members(self) -> frozenset[NodeId]:
        return self.members | {self.head}


def nodes_by_id(nodes: Iterable[NodeState]) -> dict[NodeId, NodeState]:
    """Map current ID to node for live nodes."""
    return {n.id: n for n in nodes if n.alive}


def assert_unique_ids(nodes: Iterable[NodeState]) -> None:
    seen: set[NodeId] = set()
    for node in nodes:
        if not node.alive:
            continue
        if node.id <= 0:
            raise ValueError(f"node slot {node.index} holds non-positive ID {node.id}")
        if node.id in seen:
            raise ValueError(f"duplicate live node ID {node.id}")
        seen.add(node.id)


def affiliations(clusters: Iterable[ClusterView]) -> dict[NodeId, NodeId]:
    """Map every clustered node to its CH (a CH maps to itself)."""
    result: dict[NodeId, NodeId] = {}
    for view in clusters:
        result[view.head] = view.head
        for member in view.members:
            result[member] = view.head
    return result


def apply_clusters(nodes: Iterable[NodeState], clusters: Iterable[ClusterView]) -> None:
    """Write roles and cluster_of onto live nodes from an election result."""
    role_of: dict[NodeId, tuple[Role, NodeId]] = {}
    for view in clusters:
        role_of[view.head] = (Role.CH, view.head)
        for member in view.members:
            role = Role.GATEWAY if member in view.gateways else Role.ORDINARY
            role_of[member] = (role, view.head)
    for node in nodes:
        if not node.alive:
            continue
        node.role, node.cluster_of = role_of.get(node.id, (Role.ORDINARY, None))
