"""Fixed-tick drone motion model and the magnetic grabber.

Motion is a first-order lag toward the goal with a hard speed clamp; no
aerodynamics, the flight controller is assumed to hold attitude.  Everything
here is deterministic: identical inputs produce bit-identical states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .teleop import AltitudeCommand
from .types import (
    ALT_TOLERANCE,
    DroneMode,
    DroneState,
    SimConfig,
    TargetObject,
    ValidationError,
    Vec3,
)


@dataclass(frozen=True)
class GrabberModel:
    """Underslung magnetic attachment point.

    offset_z: the carried object hangs this far below the drone center
    (default half the airframe height).
    """

    offset_z: float = 0.10
    r_capture: float = 0.05

    def __post_init__(self):
        if self.offset_z <= 0:
            raise ValidationError("grabber offset_z must be > 0")
        if self.r_capture <= 0:
            raise ValidationError("grabber r_capture must be > 0")


@dataclass(frozen=True)
class WorldState:
    drone: DroneState
    target: TargetObject
    tick: int = 0


def step(state: DroneState, goal: Vec3, dt: float, cfg: SimConfig) -> DroneState:
    """One Euler step of first-order goal tracking.

    velocity = (goal - position) / tau, magnitude-clamped to v_max;
    position += velocity * dt.
    """
    err = goal - state.position
    vx, vy, vz = err.x / cfg.tau, err.y / cfg.tau, err.z / cfg.tau
    speed = math.sqrt(vx * vx + vy * vy + vz * vz)
    if speed > cfg.v_max:
        scale = cfg.v_max / speed
        vx, vy, vz = vx * scale, vy * scale, vz * scale
    velocity = Vec3(vx, vy, vz)
    position = Vec3(
        state.position.x + vx * dt,
        state.position.y + vy * dt,
        state.position.z + vz * dt,
    )
    return replace(state, position=position, velocity=velocity)


def altitude_target(cmd: AltitudeCommand, cfg: SimConfig) -> float:
    if cmd is AltitudeCommand.DESCEND_TO_PICK:
        return cfg.pick_alt
    if cmd is AltitudeCommand.LAND:
        return cfg.arena_z_min
    return cfg.cruise_alt


def next_mode(cmd: AltitudeCommand, mode: DroneMode, z: float, cfg: SimConfig) -> DroneMode:
    """Mode transition after a step, given the active altitude command."""
    if cmd is AltitudeCommand.LAND:
        grounded = abs(z - cfg.arena_z_min) <= ALT_TOLERANCE
        return DroneMode.LANDED if grounded else DroneMode.LANDING
    if cmd is AltitudeCommand.DESCEND_TO_PICK:
        at_pick = abs(z - cfg.pick_alt) <= ALT_TOLERANCE
        return DroneMode.PICKING if at_pick else DroneMode.DESCENDING
    # HOLD_CRUISE and RETURN_TO_CRUISE both track the cruise altitude.
    if abs(z - cfg.cruise_alt) <= ALT_TOLERANCE:
        return DroneMode.CRUISE
    if cmd is AltitudeCommand.RETURN_TO_CRUISE or mode is DroneMode.RETURNING:
        return DroneMode.RETURNING
    return DroneMode.CRUISE


def grabber_update(
    drone: DroneState,
    target: TargetObject,
    grabber: GrabberModel,
    pick_alt: float,
) -> TargetObject:
    """Attachment model for one tick.

    Capture requires Picking mode at the pick altitude with the object inside
    the horizontal capture radius; once attached the object rides rigidly
    below the drone.  Detachment only happens through an explicit release.
    """
    if target.attached:
        carried = drone.position - Vec3(0.0, 0.0, grabber.offset_z)
        return replace(target, position=carried)
    at_pick_alt = abs(drone.position.z - pick_alt) <= ALT_TOLERANCE
    if drone.mode is DroneMode.PICKING and at_pick_alt:
        if drone.position.horizontal_distance(target.position) <= grabber.r_capture:
            carried = drone.position - Vec3(0.0, 0.0, grabber.offset_z)
            return TargetObject(position=carried, attached=True)
    return target


def release(target: TargetObject) -> TargetObject:
    """Explicit detach; the object stays where it was let go."""
    return replace(target, attached=False)


def reset(cfg: SimConfig) -> WorldState:
    """Fresh world: drone landed at its start pose, object detached, tick 0."""
    cfg.validate()
    drone = DroneState(
        position=cfg.drone_start,
        velocity=Vec3(0.0, 0.0, 0.0),
        mode=DroneMode.LANDED,
    )
    target = TargetObject(position=cfg.object_start, attached=False)
    return WorldState(drone=drone, target=target, tick=0)
