"""Regenerate the frontend's telemetry fixture from the mission session.

The browser test suite replays frontend/test/data/mission_telemetry.jsonl,
which is the encoded per-tick broadcast of tests/data/mission_session.jsonl.
Rerun this after regenerating the mission session (tools/gen_mission_trace.py)
so the two fixtures stay in lockstep.

    python3 tools/gen_ui_telemetry.py
"""

from pathlib import Path

from airpick.engine import replay_session
from airpick.protocol import encode_msg

ROOT = Path(__file__).resolve().parent.parent
SESSION = ROOT / "tests" / "data" / "mission_session.jsonl"
OUT = ROOT / "frontend" / "test" / "data" / "mission_telemetry.jsonl"


def main() -> None:
    _, outs, _ = replay_session(SESSION)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w") as fh:
        for msg in outs:
            fh.write(encode_msg(msg) + "\n")
    print(f"wrote {len(outs)} telemetry lines to {OUT}")


if __name__ == "__main__":
    main()
