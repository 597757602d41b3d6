"""Tactile pattern selection, finger intensity expansion, and glove framing.

Patterns cue the object's position relative to the drone in the operator
frame (+x right, +y forward): OB when on top of it, MR/ML for lateral
offsets, MF when it is ahead.  Nothing plays when the object is behind the
drone; that gap is surfaced to telemetry instead of inventing a cue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .types import ValidationError

SYNC_BYTE = 0xA5
FRAME_LEN = 8

FINGER_NAMES = ("thumb", "index", "middle", "ring", "little")


class PatternId(Enum):
    NONE = "None"
    OB = "OB"    # on the object
    MR = "MR"    # move right
    MF = "MF"    # move forward
    ML = "ML"    # move left

    @property
    def wire_id(self) -> int:
        return _WIRE_IDS[self]


_WIRE_IDS = {
    PatternId.NONE: 0,
    PatternId.OB: 1,
    PatternId.MR: 2,
    PatternId.MF: 3,
    PatternId.ML: 4,
}
_WIRE_TO_PATTERN = {v: k for k, v in _WIRE_IDS.items()}


class IntensityLevel(Enum):
    OFF = 0
    LOW = 100
    MID = 150
    HIGH = 200


def select_pattern(
    object_xy: tuple[float, float],
    drone_xy: tuple[float, float],
    r_on: float,
) -> PatternId:
    """Pattern for the object offset d = object - drone.

    Inside r_on the drone is on the object.  Otherwise the dominant axis
    decides, with exact diagonals resolved to the lateral cue; a dominant
    negative y (object behind) has no pattern and yields NONE.
    """
    dx = object_xy[0] - drone_xy[0]
    dy = object_xy[1] - drone_xy[1]
    if not (math.isfinite(dx) and math.isfinite(dy)):
        raise ValidationError("select_pattern: positions must be finite")
    if math.hypot(dx, dy) <= r_on:
        return PatternId.OB
    if abs(dx) >= abs(dy):
        return PatternId.MR if dx > 0 else PatternId.ML
    return PatternId.MF if dy > 0 else PatternId.NONE


_PATTERN_FINGERS: dict[PatternId, tuple[IntensityLevel, ...]] = {
    PatternId.OB: (IntensityLevel.HIGH,) * 5,
    PatternId.MR: (
        IntensityLevel.HIGH, IntensityLevel.MID, IntensityLevel.MID,
        IntensityLevel.MID, IntensityLevel.LOW,
    ),
    PatternId.ML: (
        IntensityLevel.LOW, IntensityLevel.MID, IntensityLevel.MID,
        IntensityLevel.MID, IntensityLevel.HIGH,
    ),
    PatternId.MF: (
        IntensityLevel.LOW, IntensityLevel.HIGH, IntensityLevel.HIGH,
        IntensityLevel.HIGH, IntensityLevel.LOW,
    ),
    PatternId.NONE: (IntensityLevel.OFF,) * 5,
}


def pattern_intensities(pattern: PatternId) -> tuple[IntensityLevel, ...]:
    """Per-finger levels ordered thumb, index, middle, ring, little."""
    return _PATTERN_FINGERS[pattern]


def intensity_to_duty(level: IntensityLevel) -> float:
    """Linear map from intensity level to PWM duty: 0->0.0, 100->0.5, 200->1.0."""
    return level.value / 200.0


@dataclass(frozen=True)
class TactileFrame:
    pattern: PatternId
    fingers: tuple[IntensityLevel, ...]
    duties: tuple[float, ...]

    def __post_init__(self):
        if len(self.fingers) != 5 or len(self.duties) != 5:
            raise ValidationError("TactileFrame needs exactly five fingers")
        for level, duty in zip(self.fingers, self.duties):
            if duty != intensity_to_duty(level):
                raise ValidationError(
                    f"duty {duty} inconsistent with level {level.value}"
                )
        if self.pattern is PatternId.NONE and any(
            lv is not IntensityLevel.OFF for lv in self.fingers
        ):
            raise ValidationError("NONE pattern must have all fingers off")

    @classmethod
    def for_pattern(cls, pattern: PatternId) -> "TactileFrame":
        fingers = pattern_intensities(pattern)
        duties = tuple(intensity_to_duty(level) for level in fingers)
        return cls(pattern=pattern, fingers=fingers, duties=duties)


def encode_glove_frame(frame: TactileFrame) -> bytes:
    """8-byte wire frame for a physical glove driver.

    byte 0: 0xA5 sync; byte 1: pattern wire id; bytes 2-6: round(duty*255)
    per finger thumb to little; byte 7: XOR of bytes 0-6.
    """
    payload = bytearray([SYNC_BYTE, frame.pattern.wire_id])
    payload.extend(int(round(duty * 255)) for duty in frame.duties)
    checksum = 0
    for b in payload:
        checksum ^= b
    payload.append(checksum)
    return bytes(payload)


class FrameDecodeError(ValueError):
    pass


def decode_glove_frame(data: bytes) -> tuple[PatternId, tuple[float, ...]]:
    """Inverse of encode_glove_frame, returning pattern and quantized duties.

    Rejects bad length, sync, unknown pattern ids, and any checksum mismatch
    (the XOR catches every single-byte corruption).
    """
    if len(data) != FRAME_LEN:
        raise FrameDecodeError(f"expected {FRAME_LEN} bytes, got {len(data)}")
    if data[0] != SYNC_BYTE:
        raise FrameDecodeError(f"bad sync byte 0x{data[0]:02X}")
    checksum = 0
    for b in data[:7]:
        checksum ^= b
    if checksum != data[7]:
        raise FrameDecodeError(
            f"checksum mismatch: computed 0x{checksum:02X}, frame has 0x{data[7]:02X}"
        )
    if data[1] not in _WIRE_TO_PATTERN:
        raise FrameDecodeError(f"unknown pattern id {data[1]}")
    pattern = _WIRE_TO_PATTERN[data[1]]
    duties = tuple(b / 255.0 for b in data[2:7])
    return pattern, duties
