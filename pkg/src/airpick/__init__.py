"""Deterministic hand-guided drone teleoperation simulator with tactile feedback."""

from .types import (
    ALT_TOLERANCE,
    Arena,
    DroneMode,
    DroneState,
    HandSample,
    SimConfig,
    TargetObject,
    ValidationError,
    Vec3,
    clamp_to_arena,
)
from .config import ConfigError, load_config, parse_config
from .engine import Simulator, SessionRecorder, replay_session, run_trace
from .haptics import (
    IntensityLevel,
    PatternId,
    TactileFrame,
    decode_glove_frame,
    encode_glove_frame,
    select_pattern,
)
from .mission import DeliveryZone, MissionStage, MissionTracker
from .teleop import AltitudeCommand, ClaspTracker, altitude_command, detect_clasp, goal_xy

__version__ = "0.1.0"

__all__ = [
    "ALT_TOLERANCE",
    "AltitudeCommand",
    "Arena",
    "ClaspTracker",
    "ConfigError",
    "DeliveryZone",
    "DroneMode",
    "DroneState",
    "HandSample",
    "IntensityLevel",
    "MissionStage",
    "MissionTracker",
    "PatternId",
    "SessionRecorder",
    "SimConfig",
    "Simulator",
    "TactileFrame",
    "TargetObject",
    "ValidationError",
    "Vec3",
    "altitude_command",
    "clamp_to_arena",
    "decode_glove_frame",
    "detect_clasp",
    "encode_glove_frame",
    "goal_xy",
    "load_config",
    "parse_config",
    "replay_session",
    "run_trace",
    "select_pattern",
]
