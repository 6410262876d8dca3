import math

import numpy as np
import pytest

from src.models import NodeState, Role, SimConfig, TopologyHistory

# Drain rates low enough that nobody dies in a few thousand ticks, so Hello
# schedules depend only on the algorithm.
NO_DEATH_RATES = {"e_ord": 0.0001, "e_ch_base": 0.0001, "e_ch_per_member": 0.0003}


@pytest.fixture
def make_node():
    """Factory for a live NodeState; slot index defaults to id - 1."""

    def _make(node_id, pos=(0.0, 0.0), vel=(0.0, 0.0), battery=50.0, index=None, role=Role.ORDINARY, p=3):
        return NodeState(
            index=node_id - 1 if index is None else index,
            id=node_id,
            pos=pos,
            vel=vel,
            battery=battery,
            tht=TopologyHistory(p, node_id),
            hp_local=5,
            role=role,
        )

    return _make


@pytest.fixture
def graph():
    """Build a symmetric snapshot from node IDs and undirected edges."""

    def _graph(ids, edges=()):
        adjacency = {v: set() for v in ids}
        for a, b in edges:
            adjacency[a].add(b)
            adjacency[b].add(a)
        return {v: frozenset(ns) for v, ns in adjacency.items()}

    return _graph


@pytest.fixture
def random_geometric_graph():
    """Random disk graph of at most max_nodes nodes with random distinct IDs."""

    def _random(rng: np.random.Generator, max_nodes=8, side=300.0, range_m=100.0):
        n = int(rng.integers(1, max_nodes + 1))
        ids = [int(v) for v in rng.choice(np.arange(1, 4 * max_nodes + 1), size=n, replace=False)]
        pts = rng.uniform(0.0, side, size=(n, 2))
        return {
            ids[i]: frozenset(
                ids[j] for j in range(n) if j != i and math.dist(pts[i], pts[j]) <= range_m
            )
            for i in range(n)
        }

    return _random


@pytest.fixture
def small_cfg():
    return SimConfig(n_nodes=15, terrain=(300.0, 300.0), speed_max=5.0, duration=60, seed=7)


@pytest.fixture
def static_cfg():
    """Five motionless nodes all within range of each other."""
    return SimConfig(
        n_nodes=5,
        terrain=(100.0, 100.0),
        range=150.0,
        speed_min=0.0,
        speed_max=0.0,
        duration=400,
        seed=3,
        **NO_DEATH_RATES,
    )
