// Wire codec for the server's line-oriented JSON protocol.
// One self-describing object per text frame; numeric fields are SI units.

export type PatternId = "None" | "OB" | "MR" | "MF" | "ML";
export type DroneMode =
  | "Cruise"
  | "Descending"
  | "Picking"
  | "Returning"
  | "Landing"
  | "Landed";
export type Stage =
  | "Approach"
  | "Pick"
  | "Deliver"
  | "Handover"
  | "Complete"
  | "Aborted";

// answer choices, in the fixed order the prompt shows them
export const ANSWER_PATTERNS: readonly PatternId[] = ["OB", "MR", "MF", "ML"];

const PATTERN_IDS = new Set<string>(["None", "OB", "MR", "MF", "ML"]);
const DRONE_MODES = new Set<string>([
  "Cruise", "Descending", "Picking", "Returning", "Landing", "Landed",
]);

export interface PatternFrame {
  id: PatternId;
  fingers: number[]; // abstract intensity levels, thumb -> little
  duties: number[];  // duty cycles 0..1, thumb -> little
}

export interface TrialStatus {
  index: number;
  total: number;
  phase: "stimulus" | "await" | "done";
}

export interface StateMsg {
  type: "state";
  tick: number;
  drone: { x: number; y: number; z: number; vx: number; vy: number; vz: number; mode: DroneMode };
  object: { x: number; y: number; z: number; attached: boolean };
  goal: { x: number; y: number; z: number };
  pattern: PatternFrame;
  stage: Stage | null;
  clasp: boolean;
  object_behind: boolean;
  trial: TrialStatus | null;
}

export interface RoleMsg {
  type: "role";
  granted: boolean;
  role: string;
}

export interface ErrorMsg {
  type: "error";
  detail: string;
}

export type ServerMsg = StateMsg | RoleMsg | ErrorMsg;

export class ProtocolError extends Error {}

function num(obj: Record<string, unknown>, key: string, ctx: string): number {
  const v = obj[key];
  if (typeof v !== "number" || !Number.isFinite(v)) {
    throw new ProtocolError(`${ctx}: field '${key}' is not a finite number`);
  }
  return v;
}

function int(obj: Record<string, unknown>, key: string, ctx: string): number {
  const v = num(obj, key, ctx);
  if (!Number.isInteger(v)) throw new ProtocolError(`${ctx}: field '${key}' is not an integer`);
  return v;
}

function bool(obj: Record<string, unknown>, key: string, ctx: string): boolean {
  const v = obj[key];
  if (typeof v !== "boolean") throw new ProtocolError(`${ctx}: field '${key}' is not a boolean`);
  return v;
}

function str(obj: Record<string, unknown>, key: string, ctx: string): string {
  const v = obj[key];
  if (typeof v !== "string") throw new ProtocolError(`${ctx}: field '${key}' is not a string`);
  return v;
}

function rec(obj: Record<string, unknown>, key: string, ctx: string): Record<string, unknown> {
  const v = obj[key];
  if (typeof v !== "object" || v === null || Array.isArray(v)) {
    throw new ProtocolError(`${ctx}: field '${key}' is not an object`);
  }
  return v as Record<string, unknown>;
}

function decodeState(obj: Record<string, unknown>): StateMsg {
  const drone = rec(obj, "drone", "state");
  const target = rec(obj, "object", "state");
  const goal = rec(obj, "goal", "state");
  const frame = rec(obj, "pattern", "state");

  const mode = str(drone, "mode", "state.drone");
  if (!DRONE_MODES.has(mode)) throw new ProtocolError(`state.drone: unknown mode '${mode}'`);
  const patternId = str(frame, "id", "state.pattern");
  if (!PATTERN_IDS.has(patternId)) {
    throw new ProtocolError(`state.pattern: unknown pattern '${patternId}'`);
  }
  const fingers = frame["fingers"];
  const duties = frame["duties"];
  if (!Array.isArray(fingers) || fingers.length !== 5 || !fingers.every((v) => typeof v === "number")) {
    throw new ProtocolError("state.pattern: 'fingers' must be 5 numbers");
  }
  if (!Array.isArray(duties) || duties.length !== 5 || !duties.every((v) => typeof v === "number")) {
    throw new ProtocolError("state.pattern: 'duties' must be 5 numbers");
  }

  const stageRaw = obj["stage"];
  if (stageRaw !== null && typeof stageRaw !== "string") {
    throw new ProtocolError("state: field 'stage' is not a string or null");
  }

  let trial: TrialStatus | null = null;
  const trialRaw = obj["trial"];
  if (trialRaw !== null && trialRaw !== undefined) {
    if (typeof trialRaw !== "object" || Array.isArray(trialRaw)) {
      throw new ProtocolError("state: field 'trial' is not an object or null");
    }
    const t = trialRaw as Record<string, unknown>;
    const phase = str(t, "phase", "state.trial");
    if (phase !== "stimulus" && phase !== "await" && phase !== "done") {
      throw new ProtocolError(`state.trial: unknown phase '${phase}'`);
    }
    trial = { index: int(t, "index", "state.trial"), total: int(t, "total", "state.trial"), phase };
  }

  return {
    type: "state",
    tick: int(obj, "tick", "state"),
    drone: {
      x: num(drone, "x", "state.drone"),
      y: num(drone, "y", "state.drone"),
      z: num(drone, "z", "state.drone"),
      vx: num(drone, "vx", "state.drone"),
      vy: num(drone, "vy", "state.drone"),
      vz: num(drone, "vz", "state.drone"),
      mode: mode as DroneMode,
    },
    object: {
      x: num(target, "x", "state.object"),
      y: num(target, "y", "state.object"),
      z: num(target, "z", "state.object"),
      attached: bool(target, "attached", "state.object"),
    },
    goal: { x: num(goal, "x", "state.goal"), y: num(goal, "y", "state.goal"), z: num(goal, "z", "state.goal") },
    pattern: { id: patternId as PatternId, fingers: fingers as number[], duties: duties as number[] },
    stage: (stageRaw as Stage) ?? null,
    clasp: bool(obj, "clasp", "state"),
    object_behind: bool(obj, "object_behind", "state"),
    trial,
  };
}

export function decodeServerMsg(line: string): ServerMsg {
  let obj: unknown;
  try {
    obj = JSON.parse(line);
  } catch (e) {
    throw new ProtocolError(`malformed line (not JSON): ${(e as Error).message}`);
  }
  if (typeof obj !== "object" || obj === null || Array.isArray(obj)) {
    throw new ProtocolError("malformed line: expected a JSON object");
  }
  const o = obj as Record<string, unknown>;
  switch (o["type"]) {
    case "state":
      return decodeState(o);
    case "role":
      return { type: "role", granted: bool(o, "granted", "role"), role: str(o, "role", "role") };
    case "error":
      return { type: "error", detail: str(o, "detail", "error") };
    default:
      throw new ProtocolError(`unknown message type '${String(o["type"])}'`);
  }
}

// --- outgoing ---------------------------------------------------------------
// Field order matters only for byte-identical golden comparisons; the server
// accepts any order.  JSON.stringify emits compact separators, matching the
// server's own encoder.

export function handLine(seq: number, x: number, y: number, z: number, flex: number, t: number): string {
  return JSON.stringify({ type: "hand", seq, x, y, z, flex, t });
}

export function recalibrateLine(seq: number): string {
  return JSON.stringify({ type: "recalibrate", seq });
}

export function releaseLine(seq: number): string {
  return JSON.stringify({ type: "release", seq });
}

export function startMissionLine(seq: number): string {
  return JSON.stringify({ type: "start_mission", seq });
}

export function startTrialLine(seq: number, seed: number, reps: number): string {
  return JSON.stringify({ type: "start_trial", seq, seed, reps });
}

export function trialAnswerLine(seq: number, pattern: PatternId): string {
  return JSON.stringify({ type: "trial_answer", seq, pattern });
}

export function claimLine(seq: number, role: string): string {
  return JSON.stringify({ type: "claim", seq, role });
}
