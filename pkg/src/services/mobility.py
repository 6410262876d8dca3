"""Random-direction mobility with boundary reflection."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from src.models import NodeState, SimConfig


@dataclass(frozen=True)
class MobilityParams:
    speed_min: float
    speed_max: float
    direction_hold: int
    width: float
    height: float
    boundary_policy: str = "reflect"

    def __post_init__(self):
        if not 0 <= self.speed_min <= self.speed_max:
            raise ValueError(f"need 0 <= speed_min <= speed_max, got {self.speed_min}, {self.speed_max}")
        if self.direction_hold < 1:
            raise ValueError(f"direction_hold must be >= 1 tick, got {self.direction_hold}")
        if self.boundary_policy != "reflect":
            raise ValueError(f"unsupported boundary policy {self.boundary_policy!r}")

    @classmethod
    def from_config(cls, cfg: SimConfig) -> MobilityParams:
        return cls(
            speed_min=cfg.speed_min,
            speed_max=cfg.speed_max,
            direction_hold=cfg.effective_direction_hold,
            width=cfg.width,
            height=cfg.height,
        )


def draw_velocities(rng: np.random.Generator, count: int, params: MobilityParams) -> np.ndarray:
    """Speed ~ U[speed_min, speed_max], heading ~ U[0, 2π); returns (count, 2) m/s."""
    speeds = rng.uniform(params.speed_min, params.speed_max, size=count)
    headings = rng.uniform(0.0, 2.0 * math.pi, size=count)
    return np.column_stack((speeds * np.cos(headings), speeds * np.sin(headings)))


def reflect(coords: np.ndarray, vels: np.ndarray, limit: float) -> tuple[np.ndarray, np.ndarray]:
    """Fold raw coordinates back into [0, limit], flipping the velocity component per bounce."""
    coords = coords.copy()
    vels = vels.copy()
    while True:
        above = coords > limit
        below = coords < 0.0
        if not (above.any() or below.any()):
            return coords, vels
        coords = np.where(above, 2.0 * limit - coords, coords)
        coords = np.where(below, -coords, coords)
        vels = np.where(above | below, -vels, vels)


def step_mobility(
    nodes: list[NodeState],
    params: MobilityParams,
    rng: np.random.Generator,
    dt: int = 1,
    tick: int | None = None,
) -> list[NodeState]:
    """Advance every live node by vel * dt, reflecting off the terrain edges.

    On ticks that are a multiple of ``direction_hold`` every node gets a fresh
    speed and heading first. Draws are made for dead nodes too, so the
    mobility stream does not depend on which nodes are alive.
    """
    if not nodes:
        return nodes
    if tick is not None and tick > 0 and tick % params.direction_hold == 0:
        fresh = draw_velocities(rng, len(nodes), params)
        for node, vel in zip(nodes, fresh):
            if node.alive:
                node.vel = (float(vel[0]), float(vel[1]))

    movers = [n for n in nodes if n.alive]
    if not movers:
        return nodes
    pos = np.array([n.pos for n in movers], dtype=float)
    vel = np.array([n.vel for n in movers], dtype=float)
    raw = pos + vel * dt
    xs, vxs = reflect(raw[:, 0], vel[:, 0], params.width)
    ys, vys = reflect(raw[:, 1], vel[:, 1], params.height)
    for i, node in enumerate(movers):
        node.pos = (float(xs[i]), float(ys[i]))
        node.vel = (float(vxs[i]), float(vys[i]))
    return nodes
