"""Role-dependent linear battery drain."""
from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from src.models import ClusterView, NodeState, Role, SimConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnergyParams:
    e_ord: float = 0.05
    e_ch_base: float = 0.05
    e_ch_per_member: float = 0.02

    def __post_init__(self):
        if min(self.e_ord, self.e_ch_base, self.e_ch_per_member) < 0:
            raise ValueError("energy rates must be >= 0")
        if self.e_ch_base < self.e_ord:
            raise ValueError(f"e_ch_base < e_ord ({self.e_ch_base} < {self.e_ord})")

    @classmethod
    def from_config(cls, cfg: SimConfig) -> EnergyParams:
        return cls(e_ord=cfg.e_ord, e_ch_base=cfg.e_ch_base, e_ch_per_member=cfg.e_ch_per_member)

    def drain_rate(self, role: Role, members: int = 0) -> float:
        if role is Role.CH:
            return self.e_ch_base + self.e_ch_per_member * members
        return self.e_ord


def step_energy(
    nodes: list[NodeState],
    clusters: Iterable[ClusterView],
    params: EnergyParams,
    dt: int = 1,
    tick: int | None = None,
) -> list[NodeState]:
    """Drain every live node for dt ticks; nodes reaching zero die.

    Members of a CH that dies are left unattached until the next maintenance
    round re-elects them.
    """
    member_count = {view.head: len(view.members) for view in clusters}
    died: set[int] = set()
    for node in nodes:
        if not node.alive:
            continue
        members = member_count.get(node.id, 0) if node.role is Role.CH else 0
        node.battery = max(0.0, node.battery - params.drain_rate(node.role, members) * dt)
        if node.battery <= 0.0:
            node.alive = False
            node.death_tick = tick
            died.add(node.id)
            logger.debug("node slot %d (ID %d, %s) died at tick %s", node.index, node.id, node.role.value, tick)

    if died:
        for node in nodes:
            if node.alive and node.cluster_of in died:
                node.cluster_of = None
                node.role = Role.ORDINARY
        for node in nodes:
            if not node.alive:
                node.role = Role.ORDINARY
                node.cluster_of = None
    return nodes
