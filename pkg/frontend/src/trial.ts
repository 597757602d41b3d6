// Recognition-trial console.
//
// The server owns the schedule and the phase clock; this side just follows
// the trial status embedded in state frames.  During "stimulus" the finger
// display plays the pattern and the buttons are dead; the prompt opens on
// the flip to "await", and latency counts from that flip to the click.

import { PatternId, StateMsg } from "./protocol.js";

export interface AnswerRecord {
  index: number;
  shown: PatternId;
  answered: PatternId;
  latencyMs: number;
}

export class TrialConsole {
  records: AnswerRecord[] = [];
  promptOpen = false;
  finished = false;
  active = false;
  currentIndex = -1;
  total = 0;
  private shown: PatternId | null = null;
  private lastPhase: string | null = null;
  private stimulusEndAt = 0;

  // Call with every accepted state frame.
  observe(state: StateMsg, nowMs: number): void {
    const trial = state.trial;
    if (trial === null) {
      this.active = false;
      this.promptOpen = false;
      this.lastPhase = null;
      return;
    }
    this.active = true;
    this.total = trial.total;
    if (trial.phase === "stimulus") {
      if (trial.index !== this.currentIndex) {
        this.currentIndex = trial.index;
        this.promptOpen = false;
      }
      // the broadcast pattern during stimulus IS the stimulus
      this.shown = state.pattern.id;
    } else if (trial.phase === "await") {
      // a client that joined mid-await never saw the stimulus; skip that one
      if (this.lastPhase === "stimulus" && this.shown !== null) {
        this.stimulusEndAt = nowMs;
        this.promptOpen = true;
      }
      this.currentIndex = trial.index;
    } else {
      this.finished = true;
      this.promptOpen = false;
    }
    this.lastPhase = trial.phase;
  }

  // Returns the record if the click counted, null if it was ignored
  // (too early, or no prompt pending).
  answer(pattern: PatternId, nowMs: number): AnswerRecord | null {
    if (!this.promptOpen || this.shown === null) return null;
    const record: AnswerRecord = {
      index: this.currentIndex,
      shown: this.shown,
      answered: pattern,
      latencyMs: nowMs - this.stimulusEndAt,
    };
    this.records.push(record);
    this.promptOpen = false;
    this.shown = null;
    return record;
  }

  // One JSON object per line, same keys the server-side analyzer reads.
  exportLog(): string {
    return this.records
      .map((r) =>
        JSON.stringify({ shown: r.shown, answered: r.answered, latency: r.latencyMs / 1000 })
      )
      .join("\n");
  }
}
