"""Hand motion to drone command mapping.

Three pure pieces: the planar goal law (scaled hand displacement added to an
anchor position), clasp detection with two-threshold hysteresis, and the
altitude command ordering in which landing dominates everything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .types import Arena, DroneMode, ValidationError, Vec3, clamp_to_arena


class AltitudeCommand(Enum):
    HOLD_CRUISE = "HoldCruise"
    DESCEND_TO_PICK = "DescendToPick"
    RETURN_TO_CRUISE = "ReturnToCruise"
    LAND = "Land"


@dataclass(frozen=True)
class ClaspTracker:
    engaged: bool = False
    last_flex: float = 0.0


def goal_xy(
    hand_delta: tuple[float, float],
    prev_goal: tuple[float, float],
    hand_scale: float,
    arena: Arena | None = None,
) -> tuple[float, float]:
    """Scaled hand displacement applied to the previous goal position.

    x_g = hand_scale * dx + x,  y_g = hand_scale * dy + y, then clamped into
    the arena when one is given.
    """
    dx, dy = hand_delta
    px, py = prev_goal
    for name, v in (("dx", dx), ("dy", dy), ("x", px), ("y", py), ("hand_scale", hand_scale)):
        if not math.isfinite(v):
            raise ValidationError(f"goal_xy: {name} must be finite, got {v!r}")
    gx = hand_scale * dx + px
    gy = hand_scale * dy + py
    if arena is not None:
        clamped = clamp_to_arena(Vec3(gx, gy, arena.z_min), arena)
        gx, gy = clamped.x, clamped.y
    return gx, gy


def detect_clasp(
    tracker: ClaspTracker,
    flex_raw: float,
    clasp_on: float,
    clasp_off: float,
) -> tuple[ClaspTracker, bool]:
    """Hysteresis: engage at flex >= clasp_on, release at flex <= clasp_off.

    Readings inside the (clasp_off, clasp_on) band never change engagement,
    so a noisy signal near a single threshold cannot chatter.
    """
    if not clasp_off < clasp_on:
        raise ValidationError(
            f"clasp thresholds inverted: off={clasp_off} must be < on={clasp_on}"
        )
    if not (0.0 <= flex_raw <= 1.0):
        raise ValidationError(f"flex_raw must be in [0, 1], got {flex_raw!r}")
    engaged = tracker.engaged
    if flex_raw >= clasp_on:
        engaged = True
    elif flex_raw <= clasp_off:
        engaged = False
    new = replace(tracker, engaged=engaged, last_flex=flex_raw)
    return new, engaged


def altitude_command(
    hand_height: float,
    engaged: bool,
    mode: DroneMode,
    land_hand_height: float = 1.0,
) -> AltitudeCommand:
    """Vertical command for this tick.

    A hand below land_hand_height forces Land no matter what; otherwise a
    clasped hand descends toward the pick altitude, an open hand returns the
    drone to cruise if it was down picking, and cruise holds by default.
    """
    if hand_height < land_hand_height:
        return AltitudeCommand.LAND
    if engaged:
        return AltitudeCommand.DESCEND_TO_PICK
    if mode in (DroneMode.DESCENDING, DroneMode.PICKING):
        return AltitudeCommand.RETURN_TO_CRUISE
    return AltitudeCommand.HOLD_CRUISE
