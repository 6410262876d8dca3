"""Disk-model neighbourhoods, ideal message delivery and traffic accounting."""
from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from src.models import NodeId, NodeState, Snapshot

logger = logging.getLogger(__name__)

BROADCAST = None


class MessageKind(str, Enum):
    HELLO = "Hello"
    WEIGHT_REPORT = "WeightReport"
    NEW_ID_ASSIGN = "NewIdAssign"
    HP_ADAPT = "HpAdapt"

    @property
    def is_broadcast(self) -> bool:
        return self in (MessageKind.HELLO, MessageKind.HP_ADAPT)


@dataclass(frozen=True)
class ControlMessage:
    kind: MessageKind
    src: NodeId
    dst: NodeId | None = BROADCAST
    payload: Any = None

    def __post_init__(self):
        if self.kind.is_broadcast and self.dst is not BROADCAST:
            raise ValueError(f"{self.kind.value} is broadcast-only, got dst={self.dst}")
        if not self.kind.is_broadcast and self.dst is BROADCAST:
            raise ValueError(f"{self.kind.value} is unicast-only and needs a destination")


@dataclass(frozen=True)
class Delivery:
    recipients: frozenset[NodeId]
    delivered: bool


@dataclass
class TrafficLedger:
    """Transmission counts per kind plus a per-tick series of those counts."""

    counts: dict[MessageKind, int] = field(default_factory=lambda: {kind: 0 for kind in MessageKind})
    series: list[dict[MessageKind, int]] = field(default_factory=list)
    _pending: dict[MessageKind, int] = field(default_factory=lambda: {kind: 0 for kind in MessageKind})

    def record(self, kind: MessageKind, count: int = 1) -> None:
        self.counts[kind] += count
        self._pending[kind] += count

    def close_tick(self) -> dict[MessageKind, int]:
        """Seal the current tick's counts into the series and return them."""
        closed = dict(self._pending)
        self.series.append(closed)
        self._pending = {kind: 0 for kind in MessageKind}
        return closed

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _positions(nodes: Sequence[NodeState]) -> np.ndarray:
    return np.array([n.pos for n in nodes], dtype=float).reshape(len(nodes), 2)


def neighbor_snapshot(nodes: Iterable[NodeState], range_m: float) -> dict[NodeId, frozenset[NodeId]]:
    """Neighbour sets of every live node keyed by current ID.

    Distance exactly equal to the range counts as in range. The comparison is
    done on squared distances of a symmetric matrix, so u ∈ N(v) ⇔ v ∈ N(u).
    """
    live = [n for n in nodes if n.alive]
    if not live:
        return {}
    pos = _positions(live)
    diff = pos[:, None, :] - pos[None, :, :]
    dist2 = (diff ** 2).sum(axis=2)
    adjacent = dist2 <= range_m * range_m
    np.fill_diagonal(adjacent, False)
    ids = [n.id for n in live]
    return {
        ids[i]: frozenset(ids[j] for j in np.flatnonzero(adjacent[i]))
        for i in range(len(live))
    }


def neighborhood(node: NodeState, all_nodes: Iterable[NodeState], range_m: float) -> frozenset[NodeId]:
    """IDs of live nodes other than ``node`` within ``range_m`` metres of it."""
    if not node.alive:
        raise ValueError(f"node {node.id} is dead and has no neighbourhood")
    limit = range_m * range_m
    x, y = node.pos
    return frozenset(
        other.id
        for other in all_nodes
        if other.alive and other is not node and (other.pos[0] - x) ** 2 + (other.pos[1] - y) ** 2 <= limit
    )


def deliver(msg: ControlMessage, neighbors: Snapshot, ledger: TrafficLedger) -> Delivery:
    """Deliver one transmission instantly; the ledger counts it once regardless of outcome."""
    if msg.src not in neighbors:
        raise ValueError(f"sender {msg.src} is not a live node")
    ledger.record(msg.kind)
    audible = neighbors[msg.src]
    if msg.dst is BROADCAST:
        return Delivery(recipients=audible, delivered=True)
    if msg.dst in audible:
        return Delivery(recipients=frozenset({msg.dst}), delivered=True)
    logger.debug("%s from %s to %s failed: destination out of range", msg.kind.value, msg.src, msg.dst)
    return Delivery(recipients=frozenset(), delivered=False)


class RadioHarness:
    """Owns the traffic ledger of one run and the transmission range."""

    def __init__(self, range_m: float):
        self.range = range_m
        self.ledger = TrafficLedger()

    def snapshot(self, nodes: Iterable[NodeState]) -> dict[NodeId, frozenset[NodeId]]:
        return neighbor_snapshot(nodes, self.range)

    def deliver(self, msg: ControlMessage, neighbors: Snapshot) -> Delivery:
        return deliver(msg, neighbors, self.ledger)

    def broadcast(self, kind: MessageKind, src: NodeId, neighbors: Snapshot, payload: Any = None) -> Delivery:
        return self.deliver(ControlMessage(kind, src, BROADCAST, payload), neighbors)

    def unicast(self, kind: MessageKind, src: NodeId, dst: NodeId, neighbors: Snapshot, payload: Any = None) -> Delivery:
        return self.deliver(ControlMessage(kind, src, dst, payload), neighbors)
