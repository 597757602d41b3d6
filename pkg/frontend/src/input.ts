// Operator input: pointer position becomes the virtual hand, a held key
// becomes the clasp, wheel or arrow keys move the hand up and down.
//
// The send loop samples this at a fixed rate; between pointer events the
// sample just repeats (sample-and-hold, same as a real tracker between
// frames).  Timestamps come from an injected clock so tests can steer them.

import { handLine } from "./protocol.js";

export const HAND_HEIGHT_MIN = 0.0;
export const HAND_HEIGHT_MAX = 2.0;
export const HEIGHT_STEP = 0.05; // meters per wheel notch / key press

export class HandSource {
  x = 0; // meters, world frame
  y = 0;
  height = 1.5; // starts well above the land threshold
  clasp = false;

  moveTo(x: number, y: number): void {
    this.x = x;
    this.y = y;
  }

  nudgeHeight(steps: number): void {
    const next = this.height + steps * HEIGHT_STEP;
    this.height = Math.min(HAND_HEIGHT_MAX, Math.max(HAND_HEIGHT_MIN, next));
  }

  setClasp(down: boolean): void {
    this.clasp = down;
  }

  // One wire line for the current hand pose. flex is binary here: a held
  // key is a full fist, which sits above any engage threshold.
  sampleLine(seq: number, tSeconds: number): string {
    return handLine(seq, this.x, this.y, this.height, this.clasp ? 1.0 : 0.0, tSeconds);
  }
}
