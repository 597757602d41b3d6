import { describe, expect, it } from "vitest";

import { StateMsg } from "../src/protocol.js";
import { STALE_AFTER_MS, ViewModel } from "../src/viewmodel.js";

function stateLine(tick: number): string {
  return JSON.stringify({
    type: "state",
    tick,
    drone: { x: 0, y: 0, z: 1.2, vx: 0, vy: 0, vz: 0, mode: "Cruise" },
    object: { x: 2, y: 2, z: 0, attached: false },
    goal: { x: 0, y: 0, z: 1.2 },
    pattern: { id: "MR", fingers: [200, 150, 150, 150, 100], duties: [1, 0.75, 0.75, 0.75, 0.5] },
    stage: null,
    clasp: false,
    object_behind: false,
    trial: null,
  });
}

describe("ViewModel", () => {
  it("keeps the newest state frame and ignores regressions", () => {
    const vm = new ViewModel();
    vm.ingest(stateLine(5), 100);
    vm.ingest(stateLine(7), 120);
    vm.ingest(stateLine(6), 140); // late frame must not win
    expect(vm.latest?.tick).toBe(7);
    expect(vm.regressions).toBe(1);
    expect(vm.framesSeen).toBe(3);
  });

  it("counts bad lines without throwing and keeps the last good state", () => {
    const vm = new ViewModel();
    vm.ingest(stateLine(1), 0);
    expect(vm.ingest("garbage", 10)).toBeNull();
    expect(vm.ingest('{"type":"state","tick":true}', 20)).toBeNull();
    expect(vm.decodeErrors).toBe(2);
    expect(vm.latest?.tick).toBe(1);
  });

  it("reports staleness after a second without frames", () => {
    const vm = new ViewModel();
    expect(vm.connected(0)).toBe(false); // nothing yet
    vm.ingest(stateLine(1), 1000);
    expect(vm.connected(1000 + STALE_AFTER_MS)).toBe(true);
    expect(vm.connected(1001 + STALE_AFTER_MS)).toBe(false);
  });

  it("tracks the role grant and server errors", () => {
    const vm = new ViewModel();
    expect(vm.granted).toBeNull();
    vm.ingest('{"type":"role","granted":true,"role":"operator"}', 0);
    expect(vm.granted).toBe(true);
    vm.ingest('{"type":"error","detail":"observer input ignored"}', 0);
    expect(vm.lastError).toBe("observer input ignored");
  });

  it("fires the state hook exactly once per accepted frame", () => {
    const vm = new ViewModel();
    const seen: number[] = [];
    vm.onState = (s: StateMsg) => seen.push(s.tick);
    vm.ingest(stateLine(1), 0);
    vm.ingest(stateLine(2), 10);
    vm.ingest(stateLine(1), 20); // regression, no hook
    vm.ingest("garbage", 30);
    expect(seen).toEqual([1, 2]);
  });
});
