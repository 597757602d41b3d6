"""Deterministic simulation engine: the per-tick pipeline and session replay.

The pipeline order per tick is fixed: clasp detection, altitude command,
planar goal law, motion step, grabber update, pattern selection, mission
advance, telemetry emit.  Two runs from the same config over the same
inbound trace produce identical telemetry, byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import dynamics, mission, teleop, trial
from .config import config_from_dict, config_to_dict
from .haptics import PatternId, TactileFrame, select_pattern
from .protocol import (
    ClaimMsg,
    HandMsg,
    InboundMsg,
    OutboundMsg,
    RecalibrateMsg,
    ReleaseMsg,
    StartMissionMsg,
    StartTrialMsg,
    TrialAnswerMsg,
    TrialStatus,
    decode_msg,
    encode_msg,
)
from .types import HandSample, SimConfig, Vec3, clamp_to_arena


@dataclass
class TrialSession:
    schedule: trial.TrialSchedule
    stimulus_ticks: int
    index: int = 0
    phase: str = "stimulus"
    phase_start_tick: int = 0
    stimulus_end_tick: int | None = None
    records: list[trial.TrialRecord] = field(default_factory=list)

    @property
    def done(self) -> bool:
        return self.phase == "done"

    def current_pattern(self) -> PatternId:
        return self.schedule.sequence[self.index]


class SessionRecorder:
    """Accumulates the accepted input trace of one session for replay."""

    def __init__(self, cfg: SimConfig):
        self.cfg = cfg
        self.inputs: list[tuple[int, InboundMsg]] = []

    def record_input(self, tick: int, msg: InboundMsg) -> None:
        self.inputs.append((tick, msg))

    def write(self, path: str | Path, sim: "Simulator",
              final: OutboundMsg | None = None) -> None:
        with open(path, "w") as fh:
            fh.write(json.dumps({"type": "config", **config_to_dict(self.cfg)}) + "\n")
            for tick, msg in self.inputs:
                fh.write(json.dumps(
                    {"type": "input", "tick": tick, "msg": json.loads(encode_msg(msg))}
                ) + "\n")
            for ev in sim.mission.log:
                fh.write(json.dumps({
                    "type": "event", "tick": ev.tick,
                    "kind": ev.kind.value, "payload": ev.payload,
                }) + "\n")
            if final is not None:
                fh.write(json.dumps(
                    {"type": "final", "tick": final.tick, "msg": json.loads(encode_msg(final))}
                ) + "\n")
            fh.write(json.dumps({"type": "end", "ticks": sim.world.tick}) + "\n")


@dataclass
class SessionFile:
    cfg: SimConfig
    inputs: list[tuple[int, InboundMsg]]
    events: list[mission.MissionEvent]
    final_line: str | None
    ticks: int


def read_session(path: str | Path) -> SessionFile:
    cfg = None
    inputs: list[tuple[int, InboundMsg]] = []
    events: list[mission.MissionEvent] = []
    final_line = None
    ticks = 0
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            kind = obj.get("type")
            if kind == "config":
                obj.pop("type")
                cfg = config_from_dict(obj)
            elif kind == "input":
                inputs.append((obj["tick"], decode_msg(json.dumps(obj["msg"]))))
            elif kind == "event":
                events.append(mission.MissionEvent(
                    tick=obj["tick"],
                    kind=mission.EventKind(obj["kind"]),
                    payload=obj["payload"],
                ))
            elif kind == "final":
                final_line = json.dumps(obj["msg"], separators=(",", ":"))
            elif kind == "end":
                ticks = obj["ticks"]
            else:
                raise ValueError(f"{path}:{lineno}: unknown record type {kind!r}")
    if cfg is None:
        raise ValueError(f"{path}: missing config header line")
    return SessionFile(cfg=cfg, inputs=inputs, events=events,
                       final_line=final_line, ticks=ticks)


class Simulator:
    """Owns the world state and every tracker; drive with submit() + tick()."""

    def __init__(self, cfg: SimConfig, recorder: SessionRecorder | None = None):
        self.cfg = cfg.validate()
        self.world = dynamics.reset(cfg)
        self.grabber = dynamics.GrabberModel(
            offset_z=cfg.grabber_offset_z, r_capture=cfg.r_capture,
        )
        self.mission = mission.MissionTracker(zone=mission.DeliveryZone.from_config(cfg))
        self.clasp = teleop.ClaspTracker()
        self.latest_hand: HandSample | None = None
        self.hand_ref: tuple[float, float] | None = None
        self.goal_anchor: tuple[float, float] = (cfg.drone_start_x, cfg.drone_start_y)
        self.last_goal: Vec3 = cfg.drone_start
        self.trial_session: TrialSession | None = None
        self.recorder = recorder
        self.dropped = 0
        self._queue: list[tuple[int, InboundMsg]] = []
        self._release_this_tick = False
        self._last_hand_t = float("-inf")

    # -- inbound --------------------------------------------------------------

    def submit(self, msg: InboundMsg, at_tick: int | None = None) -> None:
        """Queue a message for the given tick (default: next tick plus the
        configured artificial input delay)."""
        if at_tick is None:
            at_tick = self.world.tick + self.cfg.input_delay_ticks
        self._queue.append((at_tick, msg))

    def _apply(self, msg: InboundMsg, tick: int) -> None:
        if isinstance(msg, HandMsg):
            if msg.sample.timestamp <= self._last_hand_t:
                self.dropped += 1
                return
            self._last_hand_t = msg.sample.timestamp
            self.latest_hand = msg.sample
            if self.hand_ref is None:
                self.hand_ref = (msg.sample.position.x, msg.sample.position.y)
        elif isinstance(msg, RecalibrateMsg):
            if self.latest_hand is not None:
                self.hand_ref = (self.latest_hand.position.x, self.latest_hand.position.y)
            self.goal_anchor = (self.last_goal.x, self.last_goal.y)
        elif isinstance(msg, ReleaseMsg):
            if (self.mission.stage is mission.MissionStage.HANDOVER
                    and self.world.target.attached):
                self.world = replace(
                    self.world, target=dynamics.release(self.world.target),
                )
                self._release_this_tick = True
            else:
                self.dropped += 1
                return
        elif isinstance(msg, StartMissionMsg):
            self.mission.start(tick)
        elif isinstance(msg, StartTrialMsg):
            schedule = trial.make_schedule(msg.seed, msg.reps)
            self.trial_session = TrialSession(
                schedule=schedule,
                stimulus_ticks=max(1, round(self.cfg.trial_stimulus_s * self.cfg.tick_rate)),
                phase_start_tick=tick,
            )
        elif isinstance(msg, TrialAnswerMsg):
            if not self._accept_answer(msg.pattern, tick):
                self.dropped += 1
                return
        elif isinstance(msg, ClaimMsg):
            pass  # role arbitration lives in the network layer
        if self.recorder is not None:
            self.recorder.record_input(tick, msg)

    def _accept_answer(self, answered: PatternId, tick: int) -> bool:
        ts = self.trial_session
        if ts is None or ts.phase != "await":
            return False  # answers before stimulus end are ignored
        latency = (tick - ts.stimulus_end_tick) / self.cfg.tick_rate
        ts.records.append(trial.TrialRecord(
            shown=ts.current_pattern(),
            answered=answered,
            latency=latency,
            t_stimulus_end=ts.stimulus_end_tick / self.cfg.tick_rate,
            t_answer=tick / self.cfg.tick_rate,
        ))
        ts.index += 1
        if ts.index >= len(ts.schedule.sequence):
            ts.phase = "done"
        else:
            ts.phase = "stimulus"
            ts.phase_start_tick = tick
        return True

    def _advance_trial_phase(self, tick: int) -> None:
        ts = self.trial_session
        if ts is None or ts.done:
            return
        if ts.phase == "stimulus" and tick - ts.phase_start_tick >= ts.stimulus_ticks:
            ts.phase = "await"
            ts.stimulus_end_tick = tick

    # -- tick -----------------------------------------------------------------

    def tick(self) -> OutboundMsg:
        t = self.world.tick
        self._release_this_tick = False
        self._advance_trial_phase(t)

        due = [qm for qm in self._queue if qm[0] <= t]
        if due:
            self._queue = [qm for qm in self._queue if qm[0] > t]
            for _, msg in due:
                self._apply(msg, t)

        cfg = self.cfg
        drone = self.world.drone
        hand = self.latest_hand
        land_commanded = False
        engaged = self.clasp.engaged

        if hand is None:
            # No operator yet: hold everything, keep telemetry flowing.
            goal = drone.position
            new_drone = drone
        else:
            self.clasp, engaged = teleop.detect_clasp(
                self.clasp, hand.flex_raw, cfg.clasp_on, cfg.clasp_off,
            )
            cmd = teleop.altitude_command(
                hand.position.z, engaged, drone.mode, cfg.land_hand_height,
            )
            land_commanded = cmd is teleop.AltitudeCommand.LAND
            if land_commanded:
                # Landing stops the process: descend in place, ignore hand xy.
                gx, gy = drone.position.x, drone.position.y
            else:
                delta = (
                    hand.position.x - self.hand_ref[0],
                    hand.position.y - self.hand_ref[1],
                )
                gx, gy = teleop.goal_xy(delta, self.goal_anchor, cfg.hand_scale, cfg.arena)
            goal = clamp_to_arena(
                Vec3(gx, gy, dynamics.altitude_target(cmd, cfg)), cfg.arena,
            )
            new_drone = dynamics.step(drone, goal, cfg.dt, cfg)
            new_drone = replace(
                new_drone,
                mode=dynamics.next_mode(cmd, drone.mode, new_drone.position.z, cfg),
            )

        self.last_goal = goal

        was_attached = self.world.target.attached
        new_target = dynamics.grabber_update(
            new_drone, self.world.target, self.grabber, cfg.pick_alt,
        )
        attach_happened = new_target.attached and not was_attached

        pattern = select_pattern(
            (new_target.position.x, new_target.position.y),
            (new_drone.position.x, new_drone.position.y),
            cfg.r_on,
        )
        object_behind = pattern is PatternId.NONE

        self.world = dynamics.WorldState(drone=new_drone, target=new_target, tick=t)
        self.mission.observe(
            tick=t,
            world=self.world,
            engaged=engaged,
            pattern=pattern,
            land_commanded=land_commanded,
            attach_happened=attach_happened,
            release_happened=self._release_this_tick,
            hand_height=None if hand is None else hand.position.z,
        )

        broadcast = self._broadcast_frame(pattern)
        out = OutboundMsg(
            tick=t,
            drone=new_drone,
            target=new_target,
            goal=goal,
            pattern=broadcast,
            stage=None if self.mission.stage is None else self.mission.stage.value,
            clasp=engaged,
            object_behind=object_behind,
            trial=self._trial_status(),
        )
        self.world = replace(self.world, tick=t + 1)
        return out

    def _broadcast_frame(self, geometric: PatternId) -> TactileFrame:
        ts = self.trial_session
        if ts is None:
            return TactileFrame.for_pattern(geometric)
        if ts.phase == "stimulus":
            return TactileFrame.for_pattern(ts.current_pattern())
        return TactileFrame.for_pattern(PatternId.NONE)

    def _trial_status(self) -> TrialStatus | None:
        ts = self.trial_session
        if ts is None:
            return None
        return TrialStatus(
            index=min(ts.index, len(ts.schedule.sequence) - 1),
            total=len(ts.schedule.sequence),
            phase=ts.phase,
        )

    # -- bulk driving ---------------------------------------------------------

    def run(self, ticks: int) -> list[OutboundMsg]:
        return [self.tick() for _ in range(ticks)]


def run_trace(
    cfg: SimConfig,
    inputs: list[tuple[int, InboundMsg]],
    ticks: int,
    recorder: SessionRecorder | None = None,
) -> tuple[Simulator, list[OutboundMsg]]:
    """Run a scripted inbound trace: msgs apply at their scheduled tick."""
    sim = Simulator(cfg, recorder=recorder)
    for at_tick, msg in inputs:
        sim.submit(msg, at_tick=at_tick)
    outputs = sim.run(ticks)
    return sim, outputs


def replay_session(path: str | Path) -> tuple[Simulator, list[OutboundMsg], SessionFile]:
    """Re-simulate a recorded session from its own config and input trace."""
    session = read_session(path)
    sim, outputs = run_trace(session.cfg, session.inputs, session.ticks)
    return sim, outputs, session
