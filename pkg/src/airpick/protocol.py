"""Line-oriented message codec for the telemetry channel.

One self-describing JSON object per line with a `type` tag; numeric fields
carry SI units.  decode_msg(encode_msg(m)) == m holds exactly for every
message kind (floats survive the JSON round trip bit-for-bit).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .haptics import IntensityLevel, PatternId, TactileFrame
from .types import DroneMode, DroneState, HandSample, TargetObject, Vec3, ValidationError


class DecodeError(ValueError):
    pass


# --- inbound (operator -> server) -------------------------------------------

@dataclass(frozen=True)
class HandMsg:
    seq: int
    sample: HandSample


@dataclass(frozen=True)
class RecalibrateMsg:
    seq: int


@dataclass(frozen=True)
class ReleaseMsg:
    seq: int


@dataclass(frozen=True)
class StartMissionMsg:
    seq: int


@dataclass(frozen=True)
class StartTrialMsg:
    seq: int
    seed: int
    reps: int


@dataclass(frozen=True)
class TrialAnswerMsg:
    seq: int
    pattern: PatternId


@dataclass(frozen=True)
class ClaimMsg:
    """Request the single operator role; everyone else stays a viewer."""

    seq: int
    role: str = "operator"


InboundMsg = (
    HandMsg | RecalibrateMsg | ReleaseMsg | StartMissionMsg
    | StartTrialMsg | TrialAnswerMsg | ClaimMsg
)


# --- outbound (server -> everyone) ------------------------------------------

@dataclass(frozen=True)
class TrialStatus:
    index: int
    total: int
    phase: str  # stimulus | await | done


@dataclass(frozen=True)
class OutboundMsg:
    tick: int
    drone: DroneState
    target: TargetObject
    goal: Vec3
    pattern: TactileFrame
    stage: str | None
    clasp: bool
    object_behind: bool
    trial: TrialStatus | None = None


@dataclass(frozen=True)
class RoleMsg:
    granted: bool
    role: str = "operator"


@dataclass(frozen=True)
class ErrorMsg:
    detail: str


AnyMsg = InboundMsg | OutboundMsg | RoleMsg | ErrorMsg


# --- encoding ----------------------------------------------------------------

def _vec(v: Vec3) -> dict:
    return {"x": v.x, "y": v.y, "z": v.z}


def _frame(f: TactileFrame) -> dict:
    return {
        "id": f.pattern.value,
        "fingers": [lv.value for lv in f.fingers],
        "duties": list(f.duties),
    }


def encode_msg(msg: AnyMsg) -> str:
    if isinstance(msg, HandMsg):
        s = msg.sample
        obj = {
            "type": "hand", "seq": msg.seq,
            "x": s.position.x, "y": s.position.y, "z": s.position.z,
            "flex": s.flex_raw, "t": s.timestamp,
        }
    elif isinstance(msg, RecalibrateMsg):
        obj = {"type": "recalibrate", "seq": msg.seq}
    elif isinstance(msg, ReleaseMsg):
        obj = {"type": "release", "seq": msg.seq}
    elif isinstance(msg, StartMissionMsg):
        obj = {"type": "start_mission", "seq": msg.seq}
    elif isinstance(msg, StartTrialMsg):
        obj = {"type": "start_trial", "seq": msg.seq, "seed": msg.seed, "reps": msg.reps}
    elif isinstance(msg, TrialAnswerMsg):
        obj = {"type": "trial_answer", "seq": msg.seq, "pattern": msg.pattern.value}
    elif isinstance(msg, ClaimMsg):
        obj = {"type": "claim", "seq": msg.seq, "role": msg.role}
    elif isinstance(msg, OutboundMsg):
        obj = {
            "type": "state",
            "tick": msg.tick,
            "drone": {
                **_vec(msg.drone.position),
                "vx": msg.drone.velocity.x,
                "vy": msg.drone.velocity.y,
                "vz": msg.drone.velocity.z,
                "mode": msg.drone.mode.value,
            },
            "object": {**_vec(msg.target.position), "attached": msg.target.attached},
            "goal": _vec(msg.goal),
            "pattern": _frame(msg.pattern),
            "stage": msg.stage,
            "clasp": msg.clasp,
            "object_behind": msg.object_behind,
            "trial": None if msg.trial is None else {
                "index": msg.trial.index, "total": msg.trial.total, "phase": msg.trial.phase,
            },
        }
    elif isinstance(msg, RoleMsg):
        obj = {"type": "role", "granted": msg.granted, "role": msg.role}
    elif isinstance(msg, ErrorMsg):
        obj = {"type": "error", "detail": msg.detail}
    else:
        raise TypeError(f"cannot encode {type(msg).__name__}")
    return json.dumps(obj, allow_nan=False, separators=(",", ":"))


# --- decoding ----------------------------------------------------------------

def _field(obj: dict, key: str, kinds, ctx: str):
    if key not in obj:
        raise DecodeError(f"{ctx}: missing field '{key}'")
    val = obj[key]
    if kinds is float and isinstance(val, int) and not isinstance(val, bool):
        return float(val)
    if not isinstance(val, kinds) or (kinds is int and isinstance(val, bool)):
        raise DecodeError(f"{ctx}: field '{key}' has wrong type {type(val).__name__}")
    return val


def _pattern_id(obj: dict, key: str, ctx: str) -> PatternId:
    raw = _field(obj, key, str, ctx)
    try:
        return PatternId(raw)
    except ValueError:
        raise DecodeError(f"{ctx}: field '{key}' has unknown pattern {raw!r}") from None


def decode_msg(line: str) -> AnyMsg:
    line = line.strip()
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DecodeError(f"malformed line (not JSON): {exc}") from None
    if not isinstance(obj, dict):
        raise DecodeError("malformed line: expected a JSON object")
    kind = obj.get("type")
    if kind is None:
        raise DecodeError("missing field 'type'")

    try:
        if kind == "hand":
            return HandMsg(
                seq=_field(obj, "seq", int, kind),
                sample=HandSample(
                    position=Vec3(
                        _field(obj, "x", float, kind),
                        _field(obj, "y", float, kind),
                        _field(obj, "z", float, kind),
                    ),
                    flex_raw=_field(obj, "flex", float, kind),
                    timestamp=_field(obj, "t", float, kind),
                ),
            )
        if kind == "recalibrate":
            return RecalibrateMsg(seq=_field(obj, "seq", int, kind))
        if kind == "release":
            return ReleaseMsg(seq=_field(obj, "seq", int, kind))
        if kind == "start_mission":
            return StartMissionMsg(seq=_field(obj, "seq", int, kind))
        if kind == "start_trial":
            return StartTrialMsg(
                seq=_field(obj, "seq", int, kind),
                seed=_field(obj, "seed", int, kind),
                reps=_field(obj, "reps", int, kind),
            )
        if kind == "trial_answer":
            return TrialAnswerMsg(
                seq=_field(obj, "seq", int, kind),
                pattern=_pattern_id(obj, "pattern", kind),
            )
        if kind == "claim":
            return ClaimMsg(seq=_field(obj, "seq", int, kind),
                            role=_field(obj, "role", str, kind))
        if kind == "state":
            return _decode_state(obj)
        if kind == "role":
            return RoleMsg(granted=_field(obj, "granted", bool, kind),
                           role=_field(obj, "role", str, kind))
        if kind == "error":
            return ErrorMsg(detail=_field(obj, "detail", str, kind))
    except ValidationError as exc:
        raise DecodeError(f"{kind}: invalid value: {exc}") from exc
    raise DecodeError(f"unknown message type {kind!r}")


def _decode_state(obj: dict) -> OutboundMsg:
    ctx = "state"
    drone_obj = _field(obj, "drone", dict, ctx)
    target_obj = _field(obj, "object", dict, ctx)
    goal_obj = _field(obj, "goal", dict, ctx)
    frame_obj = _field(obj, "pattern", dict, ctx)

    mode_raw = _field(drone_obj, "mode", str, "state.drone")
    try:
        mode = DroneMode(mode_raw)
    except ValueError:
        raise DecodeError(f"state.drone: field 'mode' has unknown value {mode_raw!r}") from None

    fingers_raw = _field(frame_obj, "fingers", list, "state.pattern")
    duties_raw = _field(frame_obj, "duties", list, "state.pattern")
    try:
        fingers = tuple(IntensityLevel(v) for v in fingers_raw)
    except ValueError:
        raise DecodeError("state.pattern: field 'fingers' has an unknown level") from None
    frame = TactileFrame(
        pattern=_pattern_id(frame_obj, "id", "state.pattern"),
        fingers=fingers,
        duties=tuple(float(d) for d in duties_raw),
    )

    stage = obj.get("stage")
    if stage is not None and not isinstance(stage, str):
        raise DecodeError("state: field 'stage' has wrong type")
    trial_obj = obj.get("trial")
    trial = None
    if trial_obj is not None:
        if not isinstance(trial_obj, dict):
            raise DecodeError("state: field 'trial' has wrong type")
        trial = TrialStatus(
            index=_field(trial_obj, "index", int, "state.trial"),
            total=_field(trial_obj, "total", int, "state.trial"),
            phase=_field(trial_obj, "phase", str, "state.trial"),
        )

    return OutboundMsg(
        tick=_field(obj, "tick", int, ctx),
        drone=DroneState(
            position=Vec3(
                _field(drone_obj, "x", float, "state.drone"),
                _field(drone_obj, "y", float, "state.drone"),
                _field(drone_obj, "z", float, "state.drone"),
            ),
            velocity=Vec3(
                _field(drone_obj, "vx", float, "state.drone"),
                _field(drone_obj, "vy", float, "state.drone"),
                _field(drone_obj, "vz", float, "state.drone"),
            ),
            mode=mode,
        ),
        target=TargetObject(
            position=Vec3(
                _field(target_obj, "x", float, "state.object"),
                _field(target_obj, "y", float, "state.object"),
                _field(target_obj, "z", float, "state.object"),
            ),
            attached=_field(target_obj, "attached", bool, "state.object"),
        ),
        goal=Vec3(
            _field(goal_obj, "x", float, "state.goal"),
            _field(goal_obj, "y", float, "state.goal"),
            _field(goal_obj, "z", float, "state.goal"),
        ),
        pattern=frame,
        stage=stage,
        clasp=_field(obj, "clasp", bool, ctx),
        object_behind=_field(obj, "object_behind", bool, ctx),
        trial=trial,
    )
