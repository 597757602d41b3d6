// Top-down arena scene plus altitude gauge and finger display.
//
// Pure drawing: everything comes in through the SceneView snapshot and goes
// out through a structural 2D-context interface, so tests can render into a
// recording stub without a browser.

import { fingerBrightness, fingerColor, FINGER_NAMES } from "./fingers.js";
import { StateMsg } from "./protocol.js";

// Subset of CanvasRenderingContext2D the scene uses.
export interface Scene2D {
  fillStyle: unknown;
  strokeStyle: unknown;
  lineWidth: number;
  globalAlpha: number;
  font: string;
  textAlign: string;
  textBaseline: string;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
  setLineDash(segments: number[]): void;
  save(): void;
  restore(): void;
}

// Display-side picture of the flight volume.  Mirrors the server defaults;
// a server running a custom arena still works, the picture is just cropped.
export const VIEW_BOUNDS = {
  xMin: -5, xMax: 5, yMin: -5, yMax: 5, zMax: 3,
  cruiseAlt: 1.2, pickAlt: 0.15,
  zone: { x: 0, y: 0, r: 0.5 },
};

export interface HandCursor {
  x: number; // meters, world frame
  y: number;
  height: number; // hand height in meters
  clasp: boolean;
}

export interface SceneView {
  state: StateMsg | null;
  connected: boolean;
  roleLabel: string;
  hand: HandCursor | null;
}

const SIDEBAR_W = 220;

interface Mapping {
  ax: number; ay: number; aw: number; ah: number; // arena panel rect, px
  toX(wx: number): number;
  toY(wy: number): number;
}

export function arenaMapping(w: number, h: number): Mapping {
  const pad = 12;
  const side = Math.max(60, Math.min(w - SIDEBAR_W, h) - 2 * pad);
  const ax = pad;
  const ay = pad + (h - 2 * pad - side) / 2;
  const b = VIEW_BOUNDS;
  const sx = side / (b.xMax - b.xMin);
  const sy = side / (b.yMax - b.yMin);
  return {
    ax, ay, aw: side, ah: side,
    toX: (wx) => ax + (wx - b.xMin) * sx,
    toY: (wy) => ay + (b.yMax - wy) * sy, // world y up, canvas y down
  };
}

// Inverse of the arena mapping, for pointer capture.
export function pxToWorld(px: number, py: number, w: number, h: number): { x: number; y: number } {
  const m = arenaMapping(w, h);
  const b = VIEW_BOUNDS;
  return {
    x: b.xMin + ((px - m.ax) / m.aw) * (b.xMax - b.xMin),
    y: b.yMax - ((py - m.ay) / m.ah) * (b.yMax - b.yMin),
  };
}

const MODE_COLORS: Record<string, string> = {
  Cruise: "#4fa3ff",
  Descending: "#ffb84f",
  Picking: "#ff7a4f",
  Returning: "#4fd9a8",
  Landing: "#c44fff",
  Landed: "#8a8f98",
};

function circle(ctx: Scene2D, x: number, y: number, r: number): void {
  ctx.beginPath();
  ctx.arc(x, y, r, 0, Math.PI * 2);
}

function drawArena(ctx: Scene2D, m: Mapping, view: SceneView): void {
  const s = view.state;
  ctx.fillStyle = "#11151c";
  ctx.fillRect(m.ax, m.ay, m.aw, m.ah);
  ctx.strokeStyle = "#2d3642";
  ctx.lineWidth = 1;
  // 1 m grid
  for (let gx = VIEW_BOUNDS.xMin; gx <= VIEW_BOUNDS.xMax; gx += 1) {
    ctx.beginPath();
    ctx.moveTo(m.toX(gx), m.ay);
    ctx.lineTo(m.toX(gx), m.ay + m.ah);
    ctx.stroke();
  }
  for (let gy = VIEW_BOUNDS.yMin; gy <= VIEW_BOUNDS.yMax; gy += 1) {
    ctx.beginPath();
    ctx.moveTo(m.ax, m.toY(gy));
    ctx.lineTo(m.ax + m.aw, m.toY(gy));
    ctx.stroke();
  }
  ctx.strokeStyle = "#55617a";
  ctx.lineWidth = 2;
  ctx.strokeRect(m.ax, m.ay, m.aw, m.ah);

  // delivery zone: the visible handover cue
  const z = VIEW_BOUNDS.zone;
  const zr = (z.r / (VIEW_BOUNDS.xMax - VIEW_BOUNDS.xMin)) * m.aw;
  ctx.setLineDash([6, 4]);
  ctx.strokeStyle = s !== null && s.stage === "Handover" ? "#6fe08f" : "#3f7a55";
  ctx.lineWidth = 2;
  circle(ctx, m.toX(z.x), m.toY(z.y), zr);
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.fillStyle = "#3f7a55";
  ctx.font = "11px sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "top";
  ctx.fillText("delivery", m.toX(z.x), m.toY(z.y) + zr + 3);

  if (s === null) return;

  // goal marker: where the control law is steering
  const gx = m.toX(s.goal.x);
  const gy = m.toY(s.goal.y);
  ctx.strokeStyle = "#9aa7bd";
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  ctx.moveTo(gx - 6, gy);
  ctx.lineTo(gx + 6, gy);
  ctx.moveTo(gx, gy - 6);
  ctx.lineTo(gx, gy + 6);
  ctx.stroke();

  // target object, apple-themed; rides under the drone once attached
  const ox = m.toX(s.object.x);
  const oy = m.toY(s.object.y);
  ctx.fillStyle = s.object.attached ? "#d94848" : "#e05656";
  circle(ctx, ox, oy, s.object.attached ? 5 : 7);
  ctx.fill();
  ctx.strokeStyle = "#7a4a2b";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(ox, oy - (s.object.attached ? 5 : 7));
  ctx.lineTo(ox + 3, oy - (s.object.attached ? 9 : 11));
  ctx.stroke();

  // drone: body, rotors, mode-colored ring
  const dx = m.toX(s.drone.x);
  const dy = m.toY(s.drone.y);
  ctx.fillStyle = "#d7dde8";
  circle(ctx, dx, dy, 6);
  ctx.fill();
  for (const [rx, ry] of [[-8, -8], [8, -8], [-8, 8], [8, 8]]) {
    ctx.fillStyle = "#aab4c4";
    circle(ctx, dx + (rx as number), dy + (ry as number), 3);
    ctx.fill();
  }
  ctx.strokeStyle = MODE_COLORS[s.drone.mode] ?? "#ffffff";
  ctx.lineWidth = 2;
  circle(ctx, dx, dy, 11);
  ctx.stroke();

  // hand cursor: where the operator's hand maps into the arena
  if (view.hand !== null) {
    const hx = m.toX(view.hand.x);
    const hy = m.toY(view.hand.y);
    ctx.strokeStyle = view.hand.clasp ? "#ffd23f" : "#8fb8ff";
    ctx.lineWidth = 2;
    circle(ctx, hx, hy, view.hand.clasp ? 5 : 9);
    ctx.stroke();
    if (view.hand.clasp) {
      ctx.fillStyle = "#ffd23f";
      circle(ctx, hx, hy, 2.5);
      ctx.fill();
    }
  }

  // no backward cue exists; flag the blind spot instead of inventing one
  if (s.object_behind) {
    ctx.fillStyle = "#ffb84f";
    ctx.font = "12px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "bottom";
    ctx.fillText("object behind ↓", m.ax + m.aw / 2, m.ay + m.ah - 6);
  }
}

function drawAltitudeGauge(ctx: Scene2D, x: number, y: number, hpx: number, s: StateMsg): void {
  const scale = (z: number): number => y + hpx - (Math.min(z, VIEW_BOUNDS.zMax) / VIEW_BOUNDS.zMax) * hpx;
  ctx.fillStyle = "#11151c";
  ctx.fillRect(x, y, 26, hpx);
  ctx.strokeStyle = "#55617a";
  ctx.lineWidth = 1;
  ctx.strokeRect(x, y, 26, hpx);
  for (const [alt, color] of [
    [VIEW_BOUNDS.cruiseAlt, "#4fa3ff"],
    [VIEW_BOUNDS.pickAlt, "#ff7a4f"],
  ] as const) {
    ctx.strokeStyle = color;
    ctx.beginPath();
    ctx.moveTo(x, scale(alt));
    ctx.lineTo(x + 26, scale(alt));
    ctx.stroke();
  }
  // goal altitude tick, then the drone itself
  ctx.strokeStyle = "#9aa7bd";
  ctx.beginPath();
  ctx.moveTo(x + 18, scale(s.goal.z));
  ctx.lineTo(x + 26, scale(s.goal.z));
  ctx.stroke();
  ctx.fillStyle = MODE_COLORS[s.drone.mode] ?? "#ffffff";
  circle(ctx, x + 13, scale(s.drone.z), 5);
  ctx.fill();
  ctx.fillStyle = "#8a93a3";
  ctx.font = "10px sans-serif";
  ctx.textAlign = "left";
  ctx.textBaseline = "middle";
  ctx.fillText(`${s.drone.z.toFixed(2)} m`, x + 30, scale(s.drone.z));
}

function drawFingerPanel(ctx: Scene2D, x: number, y: number, s: StateMsg): void {
  const bright = fingerBrightness(s.pattern);
  const barW = 24;
  const gap = 10;
  const maxH = 64;
  ctx.fillStyle = "#8a93a3";
  ctx.font = "11px sans-serif";
  ctx.textAlign = "left";
  ctx.textBaseline = "top";
  ctx.fillText(`pattern: ${s.pattern.id}`, x, y);
  for (let i = 0; i < 5; i++) {
    const b = bright[i] ?? 0;
    const bx = x + i * (barW + gap);
    const bh = Math.max(4, b * maxH);
    ctx.fillStyle = "#1a202b";
    ctx.fillRect(bx, y + 16, barW, maxH);
    ctx.fillStyle = fingerColor(b);
    ctx.fillRect(bx, y + 16 + (maxH - bh), barW, bh);
    ctx.fillStyle = "#8a93a3";
    ctx.font = "10px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "top";
    const name = FINGER_NAMES[i] ?? "";
    ctx.fillText(name.charAt(0).toUpperCase(), bx + barW / 2, y + 16 + maxH + 4);
  }
}

export function drawScene(ctx: Scene2D, view: SceneView, w: number, h: number): void {
  ctx.save();
  ctx.fillStyle = "#0b0e13";
  ctx.fillRect(0, 0, w, h);
  const m = arenaMapping(w, h);
  drawArena(ctx, m, view);

  const sx = m.ax + m.aw + 16;
  const s = view.state;
  if (s !== null) {
    drawAltitudeGauge(ctx, sx, m.ay, Math.min(200, m.ah * 0.45), s);
    drawFingerPanel(ctx, sx, m.ay + Math.min(200, m.ah * 0.45) + 24, s);

    ctx.fillStyle = "#c8d0dc";
    ctx.font = "12px sans-serif";
    ctx.textAlign = "left";
    ctx.textBaseline = "top";
    const lines = [
      `tick ${s.tick}`,
      `mode ${s.drone.mode}`,
      `stage ${s.stage ?? "-"}`,
      `clasp ${s.clasp ? "closed" : "open"}`,
      `role ${view.roleLabel}`,
    ];
    if (s.trial !== null) {
      lines.push(`trial ${Math.min(s.trial.index + 1, s.trial.total)}/${s.trial.total} ${s.trial.phase}`);
    }
    lines.forEach((line, i) => ctx.fillText(line, sx, m.ay + Math.min(200, m.ah * 0.45) + 140 + i * 16));
  }

  if (!view.connected) {
    ctx.globalAlpha = 0.82;
    ctx.fillStyle = "#1a1016";
    ctx.fillRect(0, h / 2 - 22, w, 44);
    ctx.globalAlpha = 1;
    ctx.fillStyle = "#ff6b6b";
    ctx.font = "16px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText("disconnected: no telemetry for over a second", w / 2, h / 2);
  }
  ctx.restore();
}
