"""Experiment parameterisation and its validation."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any

from .errors import ConfigError, ConfigViolation

# One tick stands for this many simulated seconds; speeds are m/s, so a node
# moves speed * TICK_SECONDS metres per tick.
TICK_SECONDS = 1.0
WEIGHT_SUM_TOLERANCE = 1e-9


class Algorithm(str, Enum):
    LID = "LID"
    HD = "HD"
    WCA = "WCA"
    LIDAR = "LIDAR"


@dataclass(frozen=True)
class SimConfig:
    n_nodes: int = 50
    terrain: tuple[float, float] = (600.0, 600.0)
    range: float = 150.0
    speed_min: float = 0.0
    speed_max: float = 15.0
    direction_hold: int | None = None
    hp_min: int = 5
    hp_max: int = 25
    k: int = 5
    p: int = 3
    m_sat: float | None = None
    w1: float = 0.7
    w2: float = 0.3
    battery_init: tuple[float, float] = (20.0, 100.0)
    e_ord: float = 0.05
    e_ch_base: float = 0.05
    e_ch_per_member: float = 0.02
    wca_c1: float = 1 / 3
    wca_c2: float = 1 / 3
    wca_c3: float = 1 / 3
    wca_ideal_degree: float | None = None
    id_pool: int | None = None
    duration: int = 180
    snapshot_interval: int = 1
    seed: int = 42
    algorithm: str = "LIDAR"

    @property
    def algo(self) -> Algorithm:
        return Algorithm(self.algorithm)

    @property
    def width(self) -> float:
        return float(self.terrain[0])

    @property
    def height(self) -> float:
        return float(self.terrain[1])

    @property
    def effective_direction_hold(self) -> int:
        return self.direction_hold if self.direction_hold is not None else self.hp_min

    @property
    def effective_id_pool(self) -> int:
        return self.id_pool if self.id_pool is not None else self.n_nodes

    @property
    def effective_m_sat(self) -> float:
        return self.m_sat if self.m_sat is not None else 2.0 * self.p

    @property
    def effective_ideal_degree(self) -> float:
        if self.wca_ideal_degree is not None:
            return self.wca_ideal_degree
        return self.n_nodes * math.pi * self.range ** 2 / (self.width * self.height)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["terrain"] = list(self.terrain)
        data["battery_init"] = list(self.battery_init)
        return data


FIELD_NAMES = tuple(f.name for f in fields(SimConfig))
_PAIR_FIELDS = ("terrain", "battery_init")


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def find_violations(cfg: SimConfig) -> list[ConfigViolation]:
    """Return every violated constraint of cfg (empty when valid)."""
    violations: list[ConfigViolation] = []

    def bad(name: str, message: str, value=None):
        violations.append(ConfigViolation(name, getattr(cfg, name) if value is None else value, message))

    int_fields = ("n_nodes", "hp_min", "hp_max", "k", "p", "duration", "snapshot_interval", "seed")
    float_fields = ("range", "speed_min", "speed_max", "w1", "w2", "e_ord", "e_ch_base",
                    "e_ch_per_member", "wca_c1", "wca_c2", "wca_c3")
    optional_ints = ("direction_hold", "id_pool")
    optional_floats = ("m_sat", "wca_ideal_degree")

    for name in int_fields:
        if not _is_int(getattr(cfg, name)):
            bad(name, "must be an integer")
    for name in float_fields:
        if not _is_number(getattr(cfg, name)):
            bad(name, "must be a number")
    for name in optional_ints:
        value = getattr(cfg, name)
        if value is not None and not _is_int(value):
            bad(name, "must be an integer or null")
    for name in optional_floats:
        value = getattr(cfg, name)
        if value is not None and not _is_number(value):
            bad(name, "must be a number or null")
    for name in _PAIR_FIELDS:
        value = getattr(cfg, name)
        if not (isinstance(value, (tuple, list)) and len(value) == 2 and all(_is_number(v) for v in value)):
            bad(name, "must be a pair of numbers")
    if cfg.algorithm not in Algorithm.__members__:
        bad("algorithm", f"must be one of {', '.join(a.value for a in Algorithm)}")
    if violations:
        # Range checks below assume well-typed fields.
        return violations

    if cfg.n_nodes < 1:
        bad("n_nodes", "must be >= 1")
    if cfg.terrain[0] <= 0 or cfg.terrain[1] <= 0:
        bad("terrain", "width and height must be > 0")
    if cfg.range <= 0:
        bad("range", "must be > 0")
    if cfg.speed_min < 0:
        bad("speed_min", "must be >= 0")
    if cfg.speed_min > cfg.speed_max:
        bad("speed_max", f"speed_min > speed_max ({cfg.speed_min} > {cfg.speed_max})")
    if cfg.direction_hold is not None and cfg.direction_hold < 1:
        bad("direction_hold", "must be >= 1 tick")
    if cfg.hp_min < 1:
        bad("hp_min", "must be >= 1 tick")
    if cfg.hp_min > cfg.hp_max:
        bad("hp_min", f"hp_min > hp_max ({cfg.hp_min} > {cfg.hp_max})")
    if cfg.k < 1:
        bad("k", "must be >= 1")
    if cfg.p < 1:
        bad("p", "must be >= 1")
    if cfg.m_sat is not None and cfg.m_sat <= 0:
        bad("m_sat", "must be > 0")
    for name in ("w1", "w2"):
        if not 0.0 <= getattr(cfg, name) <= 1.0:
            bad(name, "must lie in [0, 1]")
    if abs(cfg.w1 + cfg.w2 - 1.0) > WEIGHT_SUM_TOLERANCE:
        bad("w2", f"w1+w2 ≠ 1 ({cfg.w1} + {cfg.w2})")
    lo, hi = cfg.battery_init
    if lo < 0 or lo > hi:
        bad("battery_init", "need 0 <= lo <= hi")
    for name in ("e_ord", "e_ch_base", "e_ch_per_member"):
        if getattr(cfg, name) < 0:
            bad(name, "energy rate must be >= 0")
    if cfg.e_ch_base < cfg.e_ord:
        bad("e_ch_base", f"e_ch_base < e_ord ({cfg.e_ch_base} < {cfg.e_ord})")
    for name in ("wca_c1", "wca_c2", "wca_c3"):
        if getattr(cfg, name) < 0:
            bad(name, "WCA coefficient must be >= 0")
    if abs(cfg.wca_c1 + cfg.wca_c2 + cfg.wca_c3 - 1.0) > WEIGHT_SUM_TOLERANCE:
        bad("wca_c3", "wca_c1+wca_c2+wca_c3 ≠ 1")
    if cfg.wca_ideal_degree is not None and cfg.wca_ideal_degree < 0:
        bad("wca_ideal_degree", "must be >= 0")
    if cfg.id_pool is not None and cfg.id_pool < cfg.n_nodes:
        bad("id_pool", f"ID pool smaller than n_nodes ({cfg.id_pool} < {cfg.n_nodes})")
    if cfg.duration < 0:
        bad("duration", "must be >= 0 ticks")
    if cfg.snapshot_interval < 1:
        bad("snapshot_interval", "must be >= 1 tick")
    if not 0 <= cfg.seed < 2 ** 64:
        bad("seed", "must be a 64-bit unsigned integer")
    return violations


def validate_config(cfg: SimConfig) -> SimConfig:
    """Return cfg unchanged when valid, otherwise raise ConfigError listing every violation."""
    violations = find_violations(cfg)
    if violations:
        raise ConfigError(violations)
    return cfg


def config_from_dict(data: dict[str, Any], base: SimConfig | None = None) -> SimConfig:
    """Build a SimConfig from a JSON-style mapping. Unknown keys are an error."""
    unknown = sorted(set(data) - set(FIELD_NAMES))
    if unknown:
        raise ConfigError([ConfigViolation(key, data[key], "unknown configuration key") for key in unknown])
    values = dict(data)
    for name in _PAIR_FIELDS:
        if isinstance(values.get(name), list):
            values[name] = tuple(values[name])
    if isinstance(values.get("algorithm"), str):
        values["algorithm"] = values["algorithm"].upper()
    return replace(base or SimConfig(), **values)


def load_config(path: str | Path) -> SimConfig:
    """Load a SimConfig from a JSON file (not validated; see validate_config)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError([ConfigViolation("<document>", str(path), f"malformed JSON: {e}")]) from e
    if not isinstance(data, dict):
        raise ConfigError([ConfigViolation("<document>", str(path), "top level must be a JSON object")])
    return config_from_dict(data)


def with_overrides(cfg: SimConfig, **overrides) -> SimConfig:
    """Apply non-None overrides on top of cfg (flag > file > default)."""
    values = {key: value for key, value in overrides.items() if value is not None}
    return config_from_dict(values, base=cfg) if values else cfg
