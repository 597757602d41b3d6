import math

from airpick.engine import SessionRecorder, Simulator, replay_session, run_trace
from airpick.haptics import PatternId
from airpick.protocol import (
    HandMsg,
    RecalibrateMsg,
    ReleaseMsg,
    StartMissionMsg,
    StartTrialMsg,
    TrialAnswerMsg,
    encode_msg,
)
from airpick.types import DroneMode, HandSample, SimConfig, Vec3


def hand(seq, x, y, z, flex, t):
    return HandMsg(seq=seq, sample=HandSample(
        position=Vec3(x, y, z), flex_raw=flex, timestamp=t))


def drive(sim, n):
    out = None
    for _ in range(n):
        out = sim.tick()
    return out


def test_idle_sim_stays_parked(cfg):
    sim = Simulator(cfg)
    out = drive(sim, 10)
    assert out.tick == 9
    assert out.drone.mode is DroneMode.LANDED
    assert out.drone.position == cfg.drone_start
    assert out.goal == cfg.drone_start
    assert out.pattern.pattern is PatternId.MR  # object at (2, 2) is to the right


def test_takeoff_on_first_high_hand(cfg):
    sim = Simulator(cfg)
    sim.submit(hand(1, 0, 0, 1.5, 0.0, 0.0), at_tick=0)
    out = drive(sim, 200)  # 4 s
    assert out.drone.mode is DroneMode.CRUISE
    assert abs(out.drone.position.z - cfg.cruise_alt) < 1e-3


def test_goal_follows_scaled_hand_displacement(cfg):
    sim = Simulator(cfg)
    sim.submit(hand(1, 0.4, -0.2, 1.5, 0.0, 0.0), at_tick=0)
    sim.tick()
    # first sample only sets the reference, goal stays at the anchor
    assert (sim.last_goal.x, sim.last_goal.y) == (0.0, 0.0)
    sim.submit(hand(2, 0.9, -0.2, 1.5, 0.0, 1.0), at_tick=1)
    out = sim.tick()
    assert out.goal.x == 0.5  # 1.0 * (0.9 - 0.4)
    assert out.goal.y == 0.0


def test_hand_scale_multiplies_displacement():
    cfg = SimConfig(hand_scale=2.0)
    sim = Simulator(cfg)
    sim.submit(hand(1, 0.0, 0.0, 1.5, 0.0, 0.0), at_tick=0)
    sim.submit(hand(2, 0.3, 0.1, 1.5, 0.0, 1.0), at_tick=1)
    drive(sim, 2)
    assert math.isclose(sim.last_goal.x, 0.6)
    assert math.isclose(sim.last_goal.y, 0.2)


def test_goal_clamped_to_arena(cfg):
    sim = Simulator(cfg)
    sim.submit(hand(1, 0.0, 0.0, 1.5, 0.0, 0.0), at_tick=0)
    sim.submit(hand(2, 40.0, -40.0, 1.5, 0.0, 1.0), at_tick=1)
    out = drive(sim, 2)
    assert (out.goal.x, out.goal.y) == (cfg.arena.x_max, cfg.arena.y_min)


def test_recalibrate_rebases_without_jump(cfg):
    sim = Simulator(cfg)
    sim.submit(hand(1, 0.0, 0.0, 1.5, 0.0, 0.0), at_tick=0)
    sim.submit(hand(2, 0.5, 0.0, 1.5, 0.0, 1.0), at_tick=1)
    drive(sim, 50)
    goal_before = sim.last_goal
    # operator re-zeros at an awkward arm position; the goal must not move
    sim.submit(RecalibrateMsg(seq=3))
    out = drive(sim, 2)
    assert out.goal.x == goal_before.x and out.goal.y == goal_before.y
    # and displacement from the new reference moves the goal from here
    sim.submit(hand(4, 0.6, 0.0, 1.5, 0.0, 2.0))
    drive(sim, 2)
    assert math.isclose(sim.last_goal.x, goal_before.x + 0.1)


def test_recalibrate_before_any_hand_is_harmless(cfg):
    sim = Simulator(cfg)
    sim.submit(RecalibrateMsg(seq=1), at_tick=0)
    out = drive(sim, 3)
    assert out.goal == cfg.drone_start


def test_stale_hand_timestamps_dropped(cfg):
    sim = Simulator(cfg)
    sim.submit(hand(1, 0.0, 0.0, 1.5, 0.0, 5.0), at_tick=0)
    sim.submit(hand(2, 1.0, 1.0, 1.5, 0.0, 5.0), at_tick=1)  # same stamp
    sim.submit(hand(3, 2.0, 2.0, 1.5, 0.0, 4.0), at_tick=2)  # older stamp
    drive(sim, 5)
    assert sim.dropped == 2
    assert sim.latest_hand.position.x == 0.0


def test_land_command_freezes_xy_and_descends(cfg):
    sim = Simulator(cfg)
    sim.submit(hand(1, 0.0, 0.0, 1.5, 0.0, 0.0), at_tick=0)
    sim.submit(hand(2, 1.0, 0.0, 1.5, 0.0, 1.0), at_tick=10)
    drive(sim, 100)
    x_at_land = sim.world.drone.position.x
    sim.submit(hand(3, 1.0, 0.0, 0.5, 0.0, 2.0))  # hand below threshold
    out = drive(sim, 300)  # 6 s is plenty to settle
    assert out.drone.mode is DroneMode.LANDED
    assert out.drone.position.z <= 0.01
    # horizontal position held where the land command caught it
    assert abs(out.drone.position.x - x_at_land) < 0.05
    # hand xy keeps being ignored while landing
    assert out.goal.x == out.drone.position.x


def test_input_delay_shifts_reaction():
    inputs = [(0, hand(1, 0.0, 0.0, 1.5, 0.0, 0.0))]
    prompt = Simulator(SimConfig())
    lagged = Simulator(SimConfig(input_delay_ticks=5))
    for at, msg in inputs:
        prompt.submit(msg)
        lagged.submit(msg)
    prompt_out = [prompt.tick() for _ in range(12)]
    lagged_out = [lagged.tick() for _ in range(12)]
    assert prompt_out[0].drone.mode is DroneMode.CRUISE  # reacted at once
    assert lagged_out[4].drone.mode is DroneMode.LANDED  # still waiting
    assert lagged_out[5].drone.mode is DroneMode.CRUISE
    # same altitude profile, five ticks later
    assert lagged_out[11].drone.position.z == prompt_out[6].drone.position.z


def mission_script(sim):
    """Fly the standard pick run; returns tick-indexed stage snapshots."""
    sim.submit(StartMissionMsg(seq=0), at_tick=0)
    sim.submit(hand(1, 0.0, 0.0, 1.5, 0.0, 0.0), at_tick=0)
    sim.submit(hand(2, 2.0, 2.0, 1.5, 0.0, 3.0), at_tick=150)
    sim.submit(hand(3, 2.0, 2.0, 1.5, 1.0, 10.0), at_tick=500)
    sim.submit(hand(4, 2.0, 2.0, 1.5, 0.0, 13.0), at_tick=650)
    sim.submit(hand(5, 0.0, 0.0, 1.5, 0.0, 16.0), at_tick=800)


def test_release_only_works_in_handover(cfg):
    sim = Simulator(cfg)
    mission_script(sim)
    drive(sim, 790)  # attached, flying home, stage Deliver
    assert sim.mission.stage.value == "Deliver"
    assert sim.world.target.attached
    sim.submit(ReleaseMsg(seq=6))
    drive(sim, 5)
    assert sim.world.target.attached  # refused mid-flight
    assert sim.dropped == 1
    drive(sim, 300)  # reach the delivery zone
    assert sim.mission.stage.value == "Handover"
    sim.submit(ReleaseMsg(seq=7))
    drive(sim, 2)
    assert not sim.world.target.attached
    assert sim.mission.stage.value == "Complete"


def test_land_mid_mission_aborts(cfg):
    sim = Simulator(cfg)
    sim.submit(StartMissionMsg(seq=0), at_tick=0)
    sim.submit(hand(1, 0.0, 0.0, 1.5, 0.0, 0.0), at_tick=0)
    drive(sim, 100)
    assert sim.mission.stage.value == "Approach"
    sim.submit(hand(2, 0.0, 0.0, 0.4, 0.0, 1.0))
    drive(sim, 10)
    assert sim.mission.stage.value == "Aborted"
    # terminal: raising the hand again does not resurrect the mission
    sim.submit(hand(3, 0.0, 0.0, 1.5, 0.0, 2.0))
    drive(sim, 10)
    assert sim.mission.stage.value == "Aborted"


def test_starting_parked_does_not_abort(cfg):
    # the drone sits Landed before takeoff; only a land *command* aborts
    sim = Simulator(cfg)
    sim.submit(StartMissionMsg(seq=0), at_tick=0)
    out = drive(sim, 3)
    assert out.stage == "Approach"


def trial_cfg():
    return SimConfig(trial_stimulus_s=0.1)  # 5 ticks per stimulus


def test_trial_phases_and_latency():
    cfg = trial_cfg()
    sim = Simulator(cfg)
    sim.submit(StartTrialMsg(seq=1, seed=0, reps=1), at_tick=0)
    outs = [sim.tick() for _ in range(5)]
    # seed 0, one rep: MR first; broadcast carries the stimulus
    assert all(o.pattern.pattern is PatternId.MR for o in outs)
    assert all(o.trial.phase == "stimulus" for o in outs)
    out = sim.tick()  # tick 5: stimulus over
    assert out.trial.phase == "await"
    assert out.pattern.pattern is PatternId.NONE  # silence while answering
    sim.submit(TrialAnswerMsg(seq=2, pattern=PatternId.MR), at_tick=8)
    while sim.world.tick <= 8:
        out = sim.tick()
    rec = sim.trial_session.records[0]
    assert rec.shown is PatternId.MR
    assert rec.answered is PatternId.MR
    assert rec.latency == 3 / cfg.tick_rate
    assert out.trial.phase == "stimulus"  # next stimulus started


def test_trial_answer_during_stimulus_ignored():
    sim = Simulator(trial_cfg())
    sim.submit(StartTrialMsg(seq=1, seed=0, reps=1), at_tick=0)
    sim.submit(TrialAnswerMsg(seq=2, pattern=PatternId.MR), at_tick=2)
    drive(sim, 5)
    assert sim.trial_session.records == []
    assert sim.dropped == 1


def test_trial_runs_to_done():
    cfg = trial_cfg()
    sim = Simulator(cfg)
    sim.submit(StartTrialMsg(seq=1, seed=0, reps=1), at_tick=0)
    seq = 2
    out = None
    for _ in range(200):
        out = sim.tick()
        ts = sim.trial_session
        if ts.done:
            break
        if ts.phase == "await":
            sim.submit(TrialAnswerMsg(seq=seq, pattern=ts.current_pattern()))
            seq += 1
    assert sim.trial_session.done
    assert out.trial.phase == "done"
    assert len(sim.trial_session.records) == 4
    shown = [r.shown.value for r in sim.trial_session.records]
    assert shown == ["MR", "OB", "MF", "ML"]  # the seed-0 schedule
    assert all(r.shown is r.answered for r in sim.trial_session.records)


def test_two_runs_are_bit_identical(cfg):
    inputs = [
        (0, StartMissionMsg(seq=0)),
        (0, hand(1, 0.0, 0.0, 1.5, 0.0, 0.0)),
        (100, hand(2, 1.3, -0.8, 1.5, 0.0, 2.0)),
        (300, hand(3, 1.3, -0.8, 1.5, 0.9, 6.0)),
    ]
    _, a = run_trace(cfg, inputs, 500)
    _, b = run_trace(cfg, inputs, 500)
    assert [encode_msg(m) for m in a] == [encode_msg(m) for m in b]


def test_record_then_replay_matches(cfg, tmp_path):
    inputs = [
        (0, StartMissionMsg(seq=0)),
        (0, hand(1, 0.0, 0.0, 1.5, 0.0, 0.0)),
        (50, hand(2, 0.7, 0.7, 1.5, 0.0, 1.0)),
        (200, hand(3, 0.7, 0.7, 1.5, 1.0, 4.0)),
    ]
    recorder = SessionRecorder(cfg)
    sim, outs = run_trace(cfg, inputs, 400, recorder=recorder)
    path = tmp_path / "session.jsonl"
    recorder.write(path, sim, final=outs[-1])

    sim2, outs2, session = replay_session(path)
    assert session.ticks == 400
    assert [encode_msg(m) for m in outs] == [encode_msg(m) for m in outs2]
    assert encode_msg(outs2[-1]) == session.final_line
    # the mission event log replays identically too
    assert sim2.mission.log == sim.mission.log


def test_recorder_skips_rejected_inputs(cfg, tmp_path):
    recorder = SessionRecorder(cfg)
    sim = Simulator(cfg, recorder=recorder)
    sim.submit(hand(1, 0.0, 0.0, 1.5, 0.0, 1.0), at_tick=0)
    sim.submit(hand(2, 1.0, 1.0, 1.5, 0.0, 0.5), at_tick=1)  # stale, dropped
    drive(sim, 3)
    assert len(recorder.inputs) == 1
