"""Cluster-head election (LID, HD, WCA-lite) and the LIDAR computations.

Every function here is pure: it reads a neighbour snapshot keyed by current
node ID and returns new values. The engine decides when to call what.
"""
from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from src.models import Algorithm, ClusterView, NodeId, ReassignmentError, Role, Snapshot, TopologyHistory


# Upper bound on Hello rounds to settle from a cold start when every node is a
# rank local minimum or neighbours one. Longer rank chains take longer.
FORMATION_ROUNDS = {
    Algorithm.LID: 2,
    Algorithm.LIDAR: 2,
    Algorithm.HD: 3,
    Algorithm.WCA: 3,
}


@dataclass(frozen=True)
class WeightEntry:
    node: NodeId
    w: float
    battery: float
    mobility: float

    @classmethod
    def compute(cls, node: NodeId, battery: float, mobility: float, w1: float, w2: float) -> WeightEntry:
        return cls(node=node, w=compute_weight(battery, mobility, w1, w2), battery=battery, mobility=mobility)


@dataclass(frozen=True)
class IdAssignment:
    """old ID -> new ID for one cluster's closed member set."""

    mapping: Mapping[NodeId, NodeId] = field(default_factory=dict)

    def __getitem__(self, old: NodeId) -> NodeId:
        return self.mapping[old]

    def __len__(self) -> int:
        return len(self.mapping)

    @property
    def pool(self) -> frozenset[NodeId]:
        return frozenset(self.mapping)

    @property
    def is_bijective(self) -> bool:
        return set(self.mapping.values()) == set(self.mapping)

    @property
    def is_identity(self) -> bool:
        return all(old == new for old, new in self.mapping.items())

    def changed(self) -> dict[NodeId, NodeId]:
        return {old: new for old, new in self.mapping.items() if old != new}


@dataclass(frozen=True)
class WcaParams:
    c1: float = 1 / 3
    c2: float = 1 / 3
    c3: float = 1 / 3
    ideal_degree: float = 0.0

    def __post_init__(self):
        if min(self.c1, self.c2, self.c3) < 0 or abs(self.c1 + self.c2 + self.c3 - 1.0) > 1e-9:
            raise ValueError(f"WCA coefficients must be >= 0 and sum to 1, got {self.c1}, {self.c2}, {self.c3}")


# Elections

def _elect(snapshot: Snapshot, rank: Callable[[NodeId], tuple]) -> list[ClusterView]:
    """Greedy cover in rank order; every node joins the best-ranked audible head.

    A node becomes CH iff no better-ranked neighbour is already CH, so a
    local rank minimum always wins, no two heads are neighbours, and a node
    hearing no CH elects itself.
    """
    order = sorted(snapshot, key=rank)
    heads: set[NodeId] = set()
    for v in order:
        if heads.isdisjoint(snapshot[v]):
            heads.add(v)

    members: dict[NodeId, set[NodeId]] = defaultdict(set)
    gateways: dict[NodeId, set[NodeId]] = defaultdict(set)
    for v in order:
        if v in heads:
            continue
        audible = [u for u in snapshot[v] if u in heads]
        chosen = min(audible, key=rank)
        members[chosen].add(v)
        if len(audible) >= 2:
            gateways[chosen].add(v)

    return [
        ClusterView(head=h, members=frozenset(members[h]), gateways=frozenset(gateways[h]))
        for h in sorted(heads)
    ]


def _lid_rank(v: NodeId) -> tuple:
    return (v,)


def _degree_rank(snapshot: Snapshot) -> Callable[[NodeId], tuple]:
    return lambda v: (-len(snapshot[v]), v)


def _score_rank(scores: Mapping[NodeId, float]) -> Callable[[NodeId], tuple]:
    return lambda v: (scores[v], v)


def lid_elect(snapshot: Snapshot) -> list[ClusterView]:
    """Lowest-ID clustering: the lowest ID in a neighbourhood becomes CH."""
    return _elect(snapshot, _lid_rank)


def hd_elect(snapshot: Snapshot) -> list[ClusterView]:
    """Highest-degree clustering, ties broken by lower ID."""
    return _elect(snapshot, _degree_rank(snapshot))


def wca_scores(
    snapshot: Snapshot,
    speed: Mapping[NodeId, float],
    serving_time: Mapping[NodeId, float],
    params: WcaParams,
) -> dict[NodeId, float]:
    """I_v = c1·|deg − ideal| + c2·serving_time + c3·speed; lower is better."""
    return {
        v: params.c1 * abs(len(snapshot[v]) - params.ideal_degree)
        + params.c2 * serving_time.get(v, 0.0)
        + params.c3 * speed.get(v, 0.0)
        for v in snapshot
    }


def wca_lite_elect(
    snapshot: Snapshot,
    speed: Mapping[NodeId, float],
    serving_time: Mapping[NodeId, float],
    params: WcaParams,
) -> list[ClusterView]:
    """Local-minimum I_v clustering; members join the audible CH with lowest I_v."""
    scores = wca_scores(snapshot, speed, serving_time, params)
    return _elect(snapshot, _score_rank(scores))


def wca_maintain(
    snapshot: Snapshot,
    clusters: Iterable[ClusterView],
    scores: Mapping[NodeId, float],
) -> list[ClusterView] | None:
    """Keep the current heads and let members migrate between audible heads.

    Returns None when some node hears no CH at all, which is the only event
    that re-invokes the WCA election.
    """
    current: dict[NodeId, NodeId] = {}
    heads = set()
    for view in clusters:
        if view.head not in snapshot:
            continue
        heads.add(view.head)
        for member in view.members:
            current[member] = view.head

    members: dict[NodeId, set[NodeId]] = defaultdict(set)
    gateways: dict[NodeId, set[NodeId]] = defaultdict(set)
    for v in sorted(snapshot):
        if v in heads:
            continue
        audible = [u for u in snapshot[v] if u in heads]
        if not audible:
            return None
        chosen = current.get(v)
        if chosen not in audible:
            chosen = min(audible, key=lambda u: (scores.get(u, 0.0), u))
        members[chosen].add(v)
        if len(audible) >= 2:
            gateways[chosen].add(v)
    return [
        ClusterView(head=h, members=frozenset(members[h]), gateways=frozenset(gateways[h]))
        for h in sorted(heads)
    ]


def elect(algorithm: Algorithm, snapshot: Snapshot, scores: Mapping[NodeId, float] | None = None) -> list[ClusterView]:
    if algorithm in (Algorithm.LID, Algorithm.LIDAR):
        return lid_elect(snapshot)
    if algorithm is Algorithm.HD:
        return hd_elect(snapshot)
    if scores is None:
        raise ValueError("WCA election needs per-node I_v scores")
    return _elect(snapshot, _score_rank(scores))


def formation_rounds(
    snapshot: Snapshot,
    algorithm: Algorithm,
    scores: Mapping[NodeId, float] | None = None,
) -> list[dict[NodeId, Role | None]]:
    """Roles known after every Hello round of a cold start, until they settle.

    Round one carries IDs, so LID local minima declare themselves at once. HD
    and WCA first spend a round exchanging degrees or weights. From then on a
    node hears only the decisions its neighbours made in earlier rounds: it
    becomes a member once it hears a better-ranked CH, and CH once all its
    better-ranked neighbours are known to be members. Members are Gateway or
    Ordinary by the CHs heard so far. None marks an undecided node.

    The structure settles in FORMATION_ROUNDS rounds when every node is a
    rank local minimum or neighbours one; longer rank-dependency chains add a
    round per link.
    """
    if algorithm in (Algorithm.LID, Algorithm.LIDAR):
        rank = _lid_rank
        rounds: list[dict[NodeId, Role | None]] = []
    else:
        if algorithm is Algorithm.HD:
            rank = _degree_rank(snapshot)
        else:
            if scores is None:
                raise ValueError("WCA formation needs per-node I_v scores")
            rank = _score_rank(scores)
        rounds = [{v: None for v in snapshot}]
    if not snapshot:
        return rounds

    better = {v: [u for u in snapshot[v] if rank(u) < rank(v)] for v in snapshot}
    is_head: dict[NodeId, bool] = {}
    while True:
        heard = dict(is_head)
        for v in snapshot:
            if v in is_head:
                continue
            if any(heard.get(u) for u in better[v]):
                is_head[v] = False
            elif all(u in heard for u in better[v]):
                is_head[v] = True

        roles: dict[NodeId, Role | None] = {}
        for v in snapshot:
            if v not in is_head:
                roles[v] = None
            elif is_head[v]:
                roles[v] = Role.CH
            else:
                audible = sum(1 for u in snapshot[v] if heard.get(u))
                roles[v] = Role.GATEWAY if audible >= 2 else Role.ORDINARY

        if rounds and roles == rounds[-1] and len(is_head) == len(snapshot):
            return rounds
        rounds.append(roles)


# LIDAR computations

def tht_distance(a: Iterable[NodeId], b: Iterable[NodeId]) -> int:
    """Cardinality of the symmetric difference of two neighbour-ID sets."""
    return len(set(a) ^ set(b))


def mobility_rate(tht: TopologyHistory | Sequence[Iterable[NodeId]], p: int) -> float:
    """Mean THT distance over the min(p, rows - 1) newest consecutive row pairs."""
    rows = tht.rows if isinstance(tht, TopologyHistory) else tuple(tht)
    pairs = min(p, len(rows) - 1)
    if pairs < 1:
        return 0.0
    return sum(tht_distance(rows[i], rows[i + 1]) for i in range(pairs)) / pairs


def compute_weight(battery: float, mobility: float, w1: float, w2: float) -> float:
    """W_v = w1·B_v − w2·M_v,p (may be negative)."""
    return w1 * battery - w2 * mobility


def reassign_ids(cluster: ClusterView, weights: Iterable[WeightEntry]) -> IdAssignment:
    """Permute the cluster's own IDs so larger weights receive smaller IDs.

    Ties in W_v keep the current ID order, so equal weights give the identity.
    """
    entries = list(weights)
    reported = [e.node for e in entries]
    closed = cluster.closed_members
    if len(reported) != len(set(reported)) or set(reported) != closed:
        missing = sorted(closed - set(reported))
        extra = sorted(set(reported) - closed)
        raise ReassignmentError(
            f"weights for cluster {cluster.head} do not match its members (missing {missing}, unexpected {extra})"
        )
    pool = sorted(closed)
    order = sorted(entries, key=lambda e: (-e.w, e.node))
    return IdAssignment({entry.node: new_id for entry, new_id in zip(order, pool)})


def adapt_hp(mean_cluster_mobility: float, hp_min: int, hp_max: int, m_sat: float) -> int:
    """Linear map from cluster mobility to Hello period, saturating at m_sat."""
    if hp_min > hp_max:
        raise ValueError(f"hp_min > hp_max ({hp_min} > {hp_max})")
    if m_sat <= 0:
        raise ValueError(f"m_sat must be > 0, got {m_sat}")
    ratio = min(max(mean_cluster_mobility, 0.0) / m_sat, 1.0)
    hp = math.floor(hp_max - (hp_max - hp_min) * ratio + 0.5)
    return max(hp_min, min(hp_max, hp))
