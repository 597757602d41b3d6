import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from airpick.haptics import (
    FRAME_LEN,
    SYNC_BYTE,
    FrameDecodeError,
    IntensityLevel,
    PatternId,
    TactileFrame,
    decode_glove_frame,
    encode_glove_frame,
    intensity_to_duty,
    pattern_intensities,
    select_pattern,
)
from airpick.types import ValidationError

R_ON = 0.05


def pat(dx, dy):
    return select_pattern((dx, dy), (0.0, 0.0), R_ON)


@pytest.mark.parametrize("dx,dy,expect", [
    (0.0, 0.0, PatternId.OB),
    (0.03, 0.03, PatternId.OB),        # hypot ~0.042 inside r_on
    (R_ON, 0.0, PatternId.OB),         # boundary included
    (0.051, 0.0, PatternId.MR),
    (-0.051, 0.0, PatternId.ML),
    (1.0, 0.5, PatternId.MR),
    (-1.0, 0.5, PatternId.ML),
    (1.0, -0.5, PatternId.MR),         # x still dominates
    (0.5, 1.0, PatternId.MF),
    (-0.5, 1.0, PatternId.MF),
    (0.5, -1.0, PatternId.NONE),       # behind: no cue
    (0.0, -1.0, PatternId.NONE),
    (1.0, 1.0, PatternId.MR),          # exact diagonal goes lateral
    (-1.0, -1.0, PatternId.ML),
    (1.0, -1.0, PatternId.MR),
])
def test_pattern_partition_table(dx, dy, expect):
    assert pat(dx, dy) is expect


offs = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


@given(offs, offs)
def test_mirror_symmetry(dx, dy):
    """Flipping left-right swaps MR and ML and fixes everything else."""
    a, b = pat(dx, dy), pat(-dx, dy)
    swap = {PatternId.MR: PatternId.ML, PatternId.ML: PatternId.MR}
    assert b is swap.get(a, a)


@given(offs, offs)
def test_ob_iff_within_radius(dx, dy):
    assert (pat(dx, dy) is PatternId.OB) == (math.hypot(dx, dy) <= R_ON)


def test_select_pattern_rejects_nonfinite():
    with pytest.raises(ValidationError):
        select_pattern((float("nan"), 0.0), (0.0, 0.0), R_ON)


def test_intensity_levels():
    assert IntensityLevel.OFF.value == 0
    assert IntensityLevel.LOW.value == 100
    assert IntensityLevel.MID.value == 150
    assert IntensityLevel.HIGH.value == 200


def test_duty_mapping():
    assert intensity_to_duty(IntensityLevel.OFF) == 0.0
    assert intensity_to_duty(IntensityLevel.LOW) == 0.5
    assert intensity_to_duty(IntensityLevel.MID) == 0.75
    assert intensity_to_duty(IntensityLevel.HIGH) == 1.0


def test_finger_tables():
    H, M, L, O = (IntensityLevel.HIGH, IntensityLevel.MID,
                  IntensityLevel.LOW, IntensityLevel.OFF)
    assert pattern_intensities(PatternId.OB) == (H, H, H, H, H)
    assert pattern_intensities(PatternId.MR) == (H, M, M, M, L)
    assert pattern_intensities(PatternId.ML) == (L, M, M, M, H)
    assert pattern_intensities(PatternId.MF) == (L, H, H, H, L)
    assert pattern_intensities(PatternId.NONE) == (O, O, O, O, O)


def test_mr_ml_are_reverses():
    assert pattern_intensities(PatternId.MR) == pattern_intensities(PatternId.ML)[::-1]


def test_frame_validation():
    with pytest.raises(ValidationError):
        TactileFrame(pattern=PatternId.OB,
                     fingers=(IntensityLevel.HIGH,) * 4,
                     duties=(1.0,) * 4)
    with pytest.raises(ValidationError):  # duty must match level
        TactileFrame(pattern=PatternId.OB,
                     fingers=(IntensityLevel.HIGH,) * 5,
                     duties=(0.9,) * 5)


def test_wire_ids():
    assert [p.wire_id for p in
            (PatternId.NONE, PatternId.OB, PatternId.MR, PatternId.MF, PatternId.ML)
            ] == [0, 1, 2, 3, 4]


# frozen wire frames, checksum recomputed by hand from the XOR rule
GOLDEN_FRAMES = {
    PatternId.NONE: "a5 00 00 00 00 00 00 a5",
    PatternId.OB: "a5 01 ff ff ff ff ff 5b",
    PatternId.MR: "a5 02 ff bf bf bf 80 67",
    PatternId.MF: "a5 03 80 ff ff ff 80 59",
    PatternId.ML: "a5 04 80 bf bf bf ff 61",
}


@pytest.mark.parametrize("pattern,expect", sorted(GOLDEN_FRAMES.items(),
                                                  key=lambda kv: kv[0].wire_id))
def test_encode_golden_vectors(pattern, expect):
    frame = encode_glove_frame(TactileFrame.for_pattern(pattern))
    assert len(frame) == FRAME_LEN
    assert frame[0] == SYNC_BYTE
    assert frame.hex(" ") == expect


@pytest.mark.parametrize("pattern", list(PatternId))
def test_decode_round_trip(pattern):
    original = TactileFrame.for_pattern(pattern)
    decoded_pattern, duties = decode_glove_frame(encode_glove_frame(original))
    assert decoded_pattern is pattern
    for got, want in zip(duties, original.duties):
        # byte quantization: off by at most half a step of 1/255
        assert abs(got - want) <= 0.5 / 255


def test_decode_rejects_bad_frames():
    good = bytearray(encode_glove_frame(TactileFrame.for_pattern(PatternId.MR)))
    with pytest.raises(FrameDecodeError, match="8 bytes"):
        decode_glove_frame(bytes(good[:7]))
    wrong_sync = bytes([0x5A]) + bytes(good[1:])
    with pytest.raises(FrameDecodeError, match="sync"):
        decode_glove_frame(wrong_sync)
    corrupted = bytes(good[:2]) + bytes([good[2] ^ 0xFF]) + bytes(good[3:])
    with pytest.raises(FrameDecodeError, match="checksum"):
        decode_glove_frame(corrupted)


def test_decode_rejects_unknown_pattern_id():
    frame = bytearray([SYNC_BYTE, 9, 0, 0, 0, 0, 0])
    checksum = 0
    for b in frame:
        checksum ^= b
    frame.append(checksum)
    with pytest.raises(FrameDecodeError, match="pattern"):
        decode_glove_frame(bytes(frame))


@given(st.binary(min_size=0, max_size=16))
def test_decode_never_crashes_on_garbage(data):
    try:
        decode_glove_frame(data)
    except FrameDecodeError:
        pass  # rejection is the expected path
