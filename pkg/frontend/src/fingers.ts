// Finger display: the on-screen stand-in for the vibrotactile glove.
// Brightness is the duty cycle itself, so equal duties always render
// identically and higher duty is always brighter.

import { PatternFrame } from "./protocol.js";

export const FINGER_NAMES = ["thumb", "index", "middle", "ring", "little"] as const;

export function fingerBrightness(frame: PatternFrame): number[] {
  return frame.duties.map((d) => Math.min(1, Math.max(0, d)));
}

// Amber ramp on a dark panel; b=0 stays visibly "off" rather than black.
export function fingerColor(b: number): string {
  const r = Math.round(40 + 215 * b);
  const g = Math.round(36 + 159 * b);
  const bl = Math.round(34 + 26 * b);
  return `rgb(${r},${g},${bl})`;
}
