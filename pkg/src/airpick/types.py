"""Shared geometric and configuration types.

World frame convention: x points to the operator's right, y points forward
(the operator faces +y), z points up.  All lengths in meters, times in
seconds, rates in Hz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from enum import Enum


class ValidationError(ValueError):
    """An operation input violated its contract."""


@dataclass(frozen=True)
class Vec3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValidationError(f"Vec3.{name} must be finite, got {v!r}")

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def horizontal_distance(self, other: "Vec3") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Arena:
    """Axis-aligned flight volume."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    z_min: float
    z_max: float

    def __post_init__(self):
        for axis in ("x", "y", "z"):
            lo = getattr(self, f"{axis}_min")
            hi = getattr(self, f"{axis}_max")
            if not lo < hi:
                raise ValidationError(f"arena {axis} bounds degenerate: [{lo}, {hi}]")

    def contains(self, p: Vec3) -> bool:
        return (
            self.x_min <= p.x <= self.x_max
            and self.y_min <= p.y <= self.y_max
            and self.z_min <= p.z <= self.z_max
        )


def clamp_to_arena(p: Vec3, arena: Arena) -> Vec3:
    """Componentwise clamp of a point into the arena box.

    Identity for points already inside; idempotent.
    """
    return Vec3(
        min(max(p.x, arena.x_min), arena.x_max),
        min(max(p.y, arena.y_min), arena.y_max),
        min(max(p.z, arena.z_min), arena.z_max),
    )


@dataclass(frozen=True)
class HandSample:
    """One operator hand observation.

    flex_raw is the glove bend reading normalized to [0, 1] at ingestion;
    timestamp counts seconds since session start.
    """

    position: Vec3
    flex_raw: float
    timestamp: float

    def __post_init__(self):
        if not (0.0 <= self.flex_raw <= 1.0):
            raise ValidationError(f"flex_raw must be in [0, 1], got {self.flex_raw!r}")
        if not math.isfinite(self.timestamp):
            raise ValidationError("timestamp must be finite")


class DroneMode(Enum):
    CRUISE = "Cruise"
    DESCENDING = "Descending"
    PICKING = "Picking"
    RETURNING = "Returning"
    LANDING = "Landing"
    LANDED = "Landed"


@dataclass(frozen=True)
class DroneState:
    position: Vec3
    velocity: Vec3
    mode: DroneMode


@dataclass(frozen=True)
class TargetObject:
    position: Vec3
    attached: bool = False


# Altitude band around a commanded altitude that counts as "arrived";
# also gates the Picking mode and the grabber altitude check.
ALT_TOLERANCE = 0.01


@dataclass(frozen=True)
class SimConfig:
    """Full simulator configuration.

    Every field maps one-to-one to a flat key in the config file
    (see airpick.config).  SI units throughout.
    """

    hand_scale: float = 1.0        # gain from hand displacement to goal displacement
    tick_rate: float = 50.0        # Hz
    v_max: float = 1.0             # m/s speed limit
    tau: float = 0.5               # s, first-order response time constant
    cruise_alt: float = 1.2        # m
    pick_alt: float = 0.15         # m, hover height while clasped
    land_hand_height: float = 1.0  # m, hand below this forces landing
    r_on: float = 0.05             # m, on-the-object radius
    r_capture: float = 0.05        # m, grabber capture radius
    clasp_on: float = 0.6          # flex threshold to engage
    clasp_off: float = 0.4         # flex threshold to release
    arena_x_min: float = -5.0
    arena_x_max: float = 5.0
    arena_y_min: float = -5.0
    arena_y_max: float = 5.0
    arena_z_min: float = 0.0
    arena_z_max: float = 3.0
    seed: int = 0
    drone_start_x: float = 0.0
    drone_start_y: float = 0.0
    drone_start_z: float = 0.0
    object_x: float = 2.0
    object_y: float = 2.0
    object_z: float = 0.0
    delivery_x: float = 0.0
    delivery_y: float = 0.0
    delivery_radius: float = 0.5   # m
    grabber_offset_z: float = 0.10  # m, object hangs this far below drone center
    trial_stimulus_s: float = 3.0  # s, tactile stimulus playback per trial
    input_delay_ticks: int = 0     # artificial inbound latency, in ticks

    @property
    def arena(self) -> Arena:
        return Arena(
            self.arena_x_min, self.arena_x_max,
            self.arena_y_min, self.arena_y_max,
            self.arena_z_min, self.arena_z_max,
        )

    @property
    def drone_start(self) -> Vec3:
        return Vec3(self.drone_start_x, self.drone_start_y, self.drone_start_z)

    @property
    def object_start(self) -> Vec3:
        return Vec3(self.object_x, self.object_y, self.object_z)

    @property
    def dt(self) -> float:
        return 1.0 / self.tick_rate

    def validate(self) -> "SimConfig":
        """Check every cross-field invariant; raise naming the offending key."""
        def require(cond: bool, key: str, constraint: str):
            if not cond:
                raise ValidationError(f"config key '{key}' violates: {constraint}")

        require(self.tick_rate > 0, "tick_rate", "must be > 0")
        require(self.tau > 0, "tau", "must be > 0")
        require(self.v_max > 0, "v_max", "must be > 0")
        require(self.hand_scale > 0, "hand_scale", "must be > 0")
        require(self.clasp_off < self.clasp_on, "clasp_off",
                f"must be < clasp_on ({self.clasp_off} >= {self.clasp_on})")
        require(0.0 <= self.clasp_off <= 1.0, "clasp_off", "must be in [0, 1]")
        require(0.0 <= self.clasp_on <= 1.0, "clasp_on", "must be in [0, 1]")
        require(self.pick_alt < self.cruise_alt, "pick_alt",
                f"must be < cruise_alt ({self.pick_alt} >= {self.cruise_alt})")
        require(self.r_capture <= self.r_on, "r_capture",
                f"must be <= r_on ({self.r_capture} > {self.r_on})")
        require(self.r_on > 0, "r_on", "must be > 0")
        require(self.r_capture > 0, "r_capture", "must be > 0")
        require(self.land_hand_height > 0, "land_hand_height", "must be > 0")
        require(self.delivery_radius > 0, "delivery_radius", "must be > 0")
        require(self.grabber_offset_z > 0, "grabber_offset_z", "must be > 0")
        require(self.trial_stimulus_s > 0, "trial_stimulus_s", "must be > 0")
        require(self.input_delay_ticks >= 0, "input_delay_ticks", "must be >= 0")
        arena = self.arena  # raises on degenerate bounds
        require(arena.contains(self.drone_start), "drone_start_x",
                "drone start must lie inside the arena")
        require(arena.contains(self.object_start), "object_x",
                "object start must lie inside the arena")
        require(self.cruise_alt <= self.arena_z_max, "cruise_alt",
                "must be <= arena_z_max")
        require(self.pick_alt >= self.arena_z_min, "pick_alt",
                "must be >= arena_z_min")
        return self


def config_field_names() -> list[str]:
    return [f.name for f in fields(SimConfig)]
