import { describe, expect, it } from "vitest";

import { fingerBrightness, fingerColor } from "../src/fingers.js";
import { PatternFrame } from "../src/protocol.js";

// frames as the server broadcasts them
const MR: PatternFrame = {
  id: "MR",
  fingers: [200, 150, 150, 150, 100],
  duties: [1.0, 0.75, 0.75, 0.75, 0.5],
};
const ML: PatternFrame = {
  id: "ML",
  fingers: [100, 150, 150, 150, 200],
  duties: [0.5, 0.75, 0.75, 0.75, 1.0],
};
const OB: PatternFrame = {
  id: "OB",
  fingers: [200, 200, 200, 200, 200],
  duties: [1.0, 1.0, 1.0, 1.0, 1.0],
};
const NONE: PatternFrame = {
  id: "None",
  fingers: [0, 0, 0, 0, 0],
  duties: [0, 0, 0, 0, 0],
};

describe("fingerBrightness", () => {
  it("MR falls from thumb to little finger", () => {
    // The gradient has three equal middle fingers, so the fall is strict at
    // the ends (thumb>index, ring>little) and never increases in between;
    // rendering the equal middles differently would break the equal-duty
    // invariant.
    const b = fingerBrightness(MR);
    expect(b).toHaveLength(5);
    for (let i = 1; i < 5; i++) expect(b[i]!).toBeLessThanOrEqual(b[i - 1]!);
    expect(b[1]!).toBeLessThan(b[0]!); // thumb brightest
    expect(b[4]!).toBeLessThan(b[3]!); // little dimmest
    expect(b[0]!).toBe(1.0);
    expect(b[4]!).toBe(0.5);
  });

  it("ML is the exact finger reversal of MR", () => {
    expect(fingerBrightness(ML)).toEqual([...fingerBrightness(MR)].reverse());
  });

  it("equal duties render identically", () => {
    const ob = fingerBrightness(OB);
    expect(new Set(ob).size).toBe(1);
    const off = fingerBrightness(NONE);
    expect(new Set(off).size).toBe(1);
  });

  it("brightness is monotone in duty and clamped to [0, 1]", () => {
    const duties = [0, 0.25, 0.5, 0.75, 1.0];
    const b = fingerBrightness({ id: "None", fingers: [0, 0, 0, 0, 0], duties });
    for (let i = 1; i < 5; i++) expect(b[i]!).toBeGreaterThan(b[i - 1]!);
    const wild = fingerBrightness({ id: "None", fingers: [0, 0, 0, 0, 0], duties: [-1, 2, 0.5, 0, 1] });
    for (const v of wild) {
      expect(v).toBeGreaterThanOrEqual(0);
      expect(v).toBeLessThanOrEqual(1);
    }
  });

  it("maps brightness to a css color that brightens with duty", () => {
    const lo = fingerColor(0);
    const hi = fingerColor(1);
    expect(lo).toMatch(/^rgb\(\d+,\d+,\d+\)$/);
    expect(hi).toMatch(/^rgb\(\d+,\d+,\d+\)$/);
    const channel = (c: string): number => Number(c.slice(4).split(",")[0]);
    expect(channel(hi)).toBeGreaterThan(channel(lo));
  });
});
