"""Pick-and-deliver mission tracking, event log, and session metrics.

The stage sequence is monotone: Approach, Pick, Deliver, Handover, Complete,
with Aborted reachable from any live stage when landing is triggered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .haptics import PatternId
from .types import ALT_TOLERANCE, DroneMode, SimConfig
from . import dynamics


class MissionStage(Enum):
    APPROACH = "Approach"
    PICK = "Pick"
    DELIVER = "Deliver"
    HANDOVER = "Handover"
    COMPLETE = "Complete"
    ABORTED = "Aborted"


TERMINAL_STAGES = (MissionStage.COMPLETE, MissionStage.ABORTED)

STAGE_ORDER = (
    MissionStage.APPROACH,
    MissionStage.PICK,
    MissionStage.DELIVER,
    MissionStage.HANDOVER,
    MissionStage.COMPLETE,
)


class EventKind(Enum):
    STAGE_ENTERED = "StageEntered"
    OBJECT_ATTACHED = "ObjectAttached"
    OBJECT_RELEASED = "ObjectReleased"
    PATTERN_CHANGED = "PatternChanged"
    CLASP_CHANGED = "ClaspChanged"
    LAND_TRIGGERED = "LandTriggered"


@dataclass(frozen=True)
class MissionEvent:
    tick: int
    kind: EventKind
    payload: dict


@dataclass(frozen=True)
class DeliveryZone:
    """Cylinder around the handover point; membership ignores altitude."""

    center_x: float
    center_y: float
    radius: float

    def contains_xy(self, x: float, y: float) -> bool:
        return math.hypot(x - self.center_x, y - self.center_y) <= self.radius

    @classmethod
    def from_config(cls, cfg: SimConfig) -> "DeliveryZone":
        return cls(cfg.delivery_x, cfg.delivery_y, cfg.delivery_radius)


class EventOrderError(ValueError):
    pass


class MetricsError(ValueError):
    pass


def record_event(log: list[MissionEvent], event: MissionEvent) -> list[MissionEvent]:
    """Append an event, enforcing non-decreasing ticks."""
    if log and event.tick < log[-1].tick:
        raise EventOrderError(
            f"event tick {event.tick} precedes last logged tick {log[-1].tick}"
        )
    log.append(event)
    return log


def advance(
    stage: MissionStage,
    world: dynamics.WorldState,
    engaged: bool,
    zone: DeliveryZone,
    land_commanded: bool = False,
) -> MissionStage:
    """One tick of stage progression.

    Landing aborts any mission that has not completed.  Otherwise: the clasp
    taking the drone into Picking starts the pick; a captured object back at
    cruise altitude starts delivery; carrying it into the delivery zone opens
    handover; the explicit release completes.
    """
    if stage in TERMINAL_STAGES:
        return stage
    if land_commanded:
        return MissionStage.ABORTED
    drone = world.drone
    if stage is MissionStage.APPROACH:
        if engaged and drone.mode is DroneMode.PICKING:
            return MissionStage.PICK
    elif stage is MissionStage.PICK:
        if world.target.attached and drone.mode is DroneMode.CRUISE:
            return MissionStage.DELIVER
    elif stage is MissionStage.DELIVER:
        if world.target.attached and zone.contains_xy(drone.position.x, drone.position.y):
            return MissionStage.HANDOVER
    elif stage is MissionStage.HANDOVER:
        if not world.target.attached:
            return MissionStage.COMPLETE
    return stage


@dataclass(frozen=True)
class MissionMetrics:
    time_to_pick: float | None
    time_to_deliver: float | None
    pattern_time_shares: dict[PatternId, float]
    completed: bool


def metrics(log: list[MissionEvent], tick_rate: float) -> MissionMetrics:
    """Derive timing and pattern exposure from a session log."""
    if not log:
        raise MetricsError("empty mission log")
    head = log[0]
    if head.kind is not EventKind.STAGE_ENTERED or head.payload.get("stage") != MissionStage.APPROACH.value:
        raise MetricsError("log must begin with StageEntered(Approach)")
    start_tick = head.tick
    end_tick = max(ev.tick for ev in log)

    attach_tick = None
    release_tick = None
    completed = False
    for ev in log:
        if ev.kind is EventKind.OBJECT_ATTACHED and attach_tick is None:
            attach_tick = ev.tick
        elif ev.kind is EventKind.OBJECT_RELEASED and release_tick is None:
            release_tick = ev.tick
        elif ev.kind is EventKind.STAGE_ENTERED and ev.payload.get("stage") == MissionStage.COMPLETE.value:
            completed = True

    if completed and attach_tick is None:
        raise MetricsError("log claims completion but records no attach event")

    time_to_pick = None if attach_tick is None else (attach_tick - start_tick) / tick_rate
    time_to_deliver = (
        None
        if attach_tick is None or release_tick is None
        else (release_tick - attach_tick) / tick_rate
    )

    shares = _pattern_shares(log, start_tick, end_tick)
    return MissionMetrics(
        time_to_pick=time_to_pick,
        time_to_deliver=time_to_deliver,
        pattern_time_shares=shares,
        completed=completed,
    )


def _pattern_shares(
    log: list[MissionEvent], start_tick: int, end_tick: int
) -> dict[PatternId, float]:
    changes = [
        (ev.tick, PatternId(ev.payload["to"]))
        for ev in log
        if ev.kind is EventKind.PATTERN_CHANGED
    ]
    shares = {p: 0.0 for p in PatternId}
    if not changes:
        shares[PatternId.NONE] = 1.0
        return shares
    total = end_tick - start_tick
    if total <= 0:
        # Degenerate single-instant session: all mass on the last pattern.
        shares[changes[-1][1]] = 1.0
        return shares
    ticks_per_pattern = {p: 0 for p in PatternId}
    for i, (tick, pattern) in enumerate(changes):
        until = changes[i + 1][0] if i + 1 < len(changes) else end_tick
        ticks_per_pattern[pattern] += max(0, until - max(tick, start_tick))
    covered = sum(ticks_per_pattern.values())
    if covered < total:
        # Interval before the first pattern event counts as no vibration.
        ticks_per_pattern[PatternId.NONE] += total - covered
    for p, n in ticks_per_pattern.items():
        shares[p] = n / total
    return shares


@dataclass
class MissionTracker:
    """Stateful per-session tracker the tick loop drives once per tick."""

    zone: DeliveryZone
    stage: MissionStage | None = None
    log: list[MissionEvent] = field(default_factory=list)
    _last_pattern: PatternId | None = None
    _last_engaged: bool = False
    _last_land: bool = False

    @property
    def active(self) -> bool:
        return self.stage is not None

    def start(self, tick: int) -> None:
        self.stage = MissionStage.APPROACH
        self.log = []
        self._last_pattern = None
        self._last_engaged = False
        self._last_land = False
        record_event(self.log, MissionEvent(
            tick, EventKind.STAGE_ENTERED, {"stage": self.stage.value},
        ))

    def observe(
        self,
        tick: int,
        world: dynamics.WorldState,
        engaged: bool,
        pattern: PatternId,
        land_commanded: bool,
        attach_happened: bool,
        release_happened: bool,
        hand_height: float | None,
    ) -> None:
        if self.stage is None:
            return
        if engaged != self._last_engaged:
            record_event(self.log, MissionEvent(
                tick, EventKind.CLASP_CHANGED, {"engaged": engaged},
            ))
            self._last_engaged = engaged
        if land_commanded and not self._last_land:
            record_event(self.log, MissionEvent(
                tick, EventKind.LAND_TRIGGERED, {"hand_height": hand_height},
            ))
        self._last_land = land_commanded
        if attach_happened:
            pos = world.target.position
            record_event(self.log, MissionEvent(
                tick, EventKind.OBJECT_ATTACHED, {"x": pos.x, "y": pos.y, "z": pos.z},
            ))
        if release_happened:
            pos = world.target.position
            record_event(self.log, MissionEvent(
                tick, EventKind.OBJECT_RELEASED, {"x": pos.x, "y": pos.y, "z": pos.z},
            ))
        if pattern is not self._last_pattern:
            record_event(self.log, MissionEvent(
                tick, EventKind.PATTERN_CHANGED, {
                    "from": None if self._last_pattern is None else self._last_pattern.value,
                    "to": pattern.value,
                },
            ))
            self._last_pattern = pattern
        new_stage = advance(self.stage, world, engaged, self.zone, land_commanded)
        if new_stage is not self.stage:
            self.stage = new_stage
            record_event(self.log, MissionEvent(
                tick, EventKind.STAGE_ENTERED, {"stage": new_stage.value},
            ))
