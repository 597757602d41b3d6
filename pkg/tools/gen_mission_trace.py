"""Regenerate tests/data/mission_session.jsonl, the canonical demo flight.

26 simulated seconds at the default 50 Hz: take off, fly to the object,
clasp to descend and grab it, return to altitude, carry it home, hand it
over, then lower the hand to land.  The file is committed; tests replay it
and require bit-identical telemetry, so only rerun this script when the
engine's behavior is meant to change.
"""

from pathlib import Path

from airpick.engine import SessionRecorder, run_trace
from airpick.protocol import HandMsg, ReleaseMsg, StartMissionMsg
from airpick.types import HandSample, SimConfig, Vec3

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "mission_session.jsonl"

TICKS = 1300  # 26 s


def build_inputs():
    inputs = []
    seq = 0

    def hand(at_tick, x, y, z, flex, t):
        nonlocal seq
        seq += 1
        sample = HandSample(position=Vec3(x, y, z), flex_raw=flex, timestamp=t)
        inputs.append((at_tick, HandMsg(seq=seq, sample=sample)))

    inputs.append((0, StartMissionMsg(seq=seq)))
    hand(0, 0.0, 0.0, 1.5, 0.0, 0.0)     # hands level, drone climbs to cruise
    hand(150, 2.0, 2.0, 1.5, 0.0, 3.0)   # reach toward the object at (2, 2)
    hand(500, 2.0, 2.0, 1.5, 1.0, 10.0)  # clasp: descend and pick
    hand(650, 2.0, 2.0, 1.5, 0.0, 13.0)  # open hand: climb back to cruise
    hand(800, 0.0, 0.0, 1.5, 0.0, 16.0)  # carry home to the delivery zone
    seq += 1
    inputs.append((1100, ReleaseMsg(seq=seq)))   # receiver takes the object
    hand(1150, 0.0, 0.0, 0.8, 0.0, 23.0)         # lower the hand: land
    return inputs


def main():
    cfg = SimConfig()
    recorder = SessionRecorder(cfg)
    sim, outputs = run_trace(cfg, build_inputs(), TICKS, recorder=recorder)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    recorder.write(OUT, sim, final=outputs[-1])
    stages = [ev.payload["stage"] for ev in sim.mission.log
              if ev.kind.value == "StageEntered"]
    print(f"wrote {OUT} ({TICKS} ticks, stages: {' -> '.join(stages)})")


if __name__ == "__main__":
    main()
