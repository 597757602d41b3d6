"""Command line front end: serve, replay, trial, analyze."""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import __version__, engine, trial
from .config import ConfigError, load_config
from .haptics import FINGER_NAMES, PatternId, TactileFrame
from .protocol import StartTrialMsg, TrialAnswerMsg
from .types import SimConfig, ValidationError

ENV_CONFIG = "AIRPICK_CONFIG"

# console entry codes for trial answers
ANSWER_KEYS = {"1": PatternId.OB, "2": PatternId.MR, "3": PatternId.MF, "4": PatternId.ML}


def _resolve_config(path_arg: str | None) -> SimConfig:
    path = path_arg or os.environ.get(ENV_CONFIG)
    if path is None:
        return SimConfig()
    return load_config(path)


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .net import create_app

    cfg = _resolve_config(args.config)
    app = create_app(
        cfg,
        record_path=args.record,
        frontend_dir=args.frontend,
    )
    print(f"airpick {__version__} serving ws://{args.host}:{args.port}/ws "
          f"at {cfg.tick_rate:g} Hz")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_replay(args: argparse.Namespace) -> int:
    sim, outputs, session = engine.replay_session(args.session)
    if args.verbose:
        for ev in sim.mission.log:
            print(f"tick {ev.tick:>6}  {ev.kind.value:<15} {ev.payload}")
    print(f"replayed {session.ticks} ticks, {len(session.inputs)} inputs, "
          f"{len(sim.mission.log)} mission events")
    if session.final_line is None:
        print("no final snapshot in file, nothing to verify")
        return 0
    from .protocol import encode_msg

    got = encode_msg(outputs[-1]) if outputs else ""
    if got == session.final_line:
        print("final state matches recording")
        return 0
    print("final state DIVERGED from recording", file=sys.stderr)
    if args.verbose:
        print(f"expected: {session.final_line}", file=sys.stderr)
        print(f"got:      {got}", file=sys.stderr)
    return 1


def _stimulus_bar(frame: TactileFrame) -> str:
    cells = []
    for name, duty in zip(FINGER_NAMES, frame.duties):
        bar = "#" * round(duty * 8)
        cells.append(f"{name}:{bar:<8}")
    return "  ".join(cells)


def _cmd_trial(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args.config)
    sim = engine.Simulator(cfg)
    sim.submit(StartTrialMsg(seq=0, seed=args.seed, reps=args.reps), at_tick=0)
    sim.tick()
    ts = sim.trial_session
    assert ts is not None
    total = len(ts.schedule.sequence)
    stimulus_ticks = ts.stimulus_ticks

    if args.auto:
        latency_ticks = max(1, round(args.auto_latency * cfg.tick_rate))
        while not ts.done:
            while ts.phase == "stimulus":
                sim.tick()
            answer = ts.current_pattern()
            at = max(ts.stimulus_end_tick + latency_ticks, sim.world.tick)
            sim.submit(TrialAnswerMsg(seq=at, pattern=answer), at_tick=at)
            while ts.phase == "await":
                sim.tick()
    else:
        print(f"{total} stimuli, {cfg.trial_stimulus_s:g} s each; "
              "answer with 1=OB 2=MR 3=MF 4=ML")
        while not ts.done:
            index = ts.index
            shown = TactileFrame.for_pattern(ts.current_pattern())
            print(f"[{index + 1}/{total}] buzzing  {_stimulus_bar(shown)}")
            for _ in range(stimulus_ticks):
                sim.tick()
            t0 = time.monotonic()
            answer = None
            while answer is None:
                key = input("pattern? ").strip()
                answer = ANSWER_KEYS.get(key)
                if answer is None:
                    print("unrecognized key, use 1..4")
            latency_ticks = max(1, round((time.monotonic() - t0) * cfg.tick_rate))
            at = max(ts.stimulus_end_tick + latency_ticks, sim.world.tick)
            sim.submit(TrialAnswerMsg(seq=at, pattern=answer), at_tick=at)
            while ts.phase == "await":
                sim.tick()

    records = ts.records
    trial.write_trial_log(args.out, records)
    correct = sum(1 for r in records if r.shown is r.answered)
    print(f"{len(records)} answers recorded to {args.out} "
          f"({correct}/{len(records)} correct)")
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    records = trial.read_trial_log(args.log)
    matrix = trial.confusion_matrix(records)
    means, overall = trial.mean_recognition_times(records)
    print(trial.format_confusion_matrix(matrix))
    print()
    print(trial.format_times(means, overall))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="airpick",
        description="hand-guided drone pick-and-deliver simulator",
    )
    p.add_argument("--version", action="version", version=f"airpick {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("serve", help="run the websocket telemetry server")
    sp.add_argument("--config", help=f"config file (default: ${ENV_CONFIG} or built-ins)")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8450)
    sp.add_argument("--record", help="write the session to this file on shutdown")
    sp.add_argument("--frontend", help="serve this directory of static files at /")
    sp.set_defaults(func=_cmd_serve)

    rp = sub.add_parser("replay", help="re-run a recorded session and verify it")
    rp.add_argument("session", help="session file produced by serve --record")
    rp.add_argument("--verbose", action="store_true", help="print mission events")
    rp.set_defaults(func=_cmd_replay)

    tp = sub.add_parser("trial", help="run a pattern recognition block")
    tp.add_argument("--config", help=f"config file (default: ${ENV_CONFIG} or built-ins)")
    tp.add_argument("--seed", type=int, required=True, help="schedule shuffle seed")
    tp.add_argument("--reps", type=int, default=10, help="repetitions per pattern")
    tp.add_argument("--out", default="trial_log.jsonl", help="answer log destination")
    tp.add_argument("--auto", action="store_true",
                    help="answer correctly by script instead of from the keyboard")
    tp.add_argument("--auto-latency", type=float, default=1.0,
                    help="scripted answer delay, seconds")
    tp.set_defaults(func=_cmd_trial)

    ap = sub.add_parser("analyze", help="summarize a trial answer log")
    ap.add_argument("log", help="answer log from the trial command")
    ap.set_defaults(func=_cmd_analyze)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValidationError, trial.AnalysisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc.filename or exc}: no such file", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
