// Entry point: wires the socket, the input sources, the trial console and
// the render loop to the page.

import { Connection, parseParams } from "./client.js";
import { HandSource } from "./input.js";
import {
  ANSWER_PATTERNS,
  PatternId,
  recalibrateLine,
  releaseLine,
  startMissionLine,
  startTrialLine,
  trialAnswerLine,
} from "./protocol.js";
import { drawScene, pxToWorld, SceneView } from "./render.js";
import { TrialConsole } from "./trial.js";
import { ViewModel } from "./viewmodel.js";

const SEND_INTERVAL_MS = 20; // matches the server tick, 50 Hz

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

const canvas = el<HTMLCanvasElement>("scene");
const ctx = canvas.getContext("2d");
if (ctx === null) throw new Error("2D context unavailable");

const statusLine = el<HTMLDivElement>("status");
const trialPanel = el<HTMLDivElement>("trialPanel");
const trialPrompt = el<HTMLDivElement>("trialPrompt");
const trialInfo = el<HTMLSpanElement>("trialInfo");
const downloadLink = el<HTMLAnchorElement>("downloadLog");
const seedInput = el<HTMLInputElement>("trialSeed");
const repsInput = el<HTMLInputElement>("trialReps");

const params = parseParams(window.location.search, window.location.host);
const vm = new ViewModel();
const conn = new Connection(params, vm);
const hand = new HandSource();
const trial = new TrialConsole();

vm.onState = (s) => trial.observe(s, performance.now());
conn.open();

// --- canvas sizing -----------------------------------------------------------

let cssW = 0;
let cssH = 0;
function resize(): void {
  const dpr = window.devicePixelRatio || 1;
  cssW = canvas.clientWidth;
  cssH = canvas.clientHeight;
  canvas.width = Math.round(cssW * dpr);
  canvas.height = Math.round(cssH * dpr);
  ctx!.setTransform(dpr, 0, 0, dpr, 0, 0);
}
window.addEventListener("resize", resize);
resize();

// --- operator input ----------------------------------------------------------

canvas.addEventListener("mousemove", (ev: MouseEvent) => {
  const r = canvas.getBoundingClientRect();
  const p = pxToWorld(ev.clientX - r.left, ev.clientY - r.top, cssW, cssH);
  hand.moveTo(p.x, p.y);
});

canvas.addEventListener("wheel", (ev: WheelEvent) => {
  ev.preventDefault();
  hand.nudgeHeight(ev.deltaY < 0 ? 1 : -1);
}, { passive: false });

window.addEventListener("keydown", (ev: KeyboardEvent) => {
  if (ev.repeat) return;
  if (ev.target instanceof HTMLInputElement) return;
  switch (ev.key) {
    case " ":
      ev.preventDefault();
      hand.setClasp(true);
      break;
    case "ArrowUp":
      hand.nudgeHeight(1);
      break;
    case "ArrowDown":
      hand.nudgeHeight(-1);
      break;
    case "r":
      if (conn.inputEnabled) conn.send(recalibrateLine(conn.nextSeq()));
      break;
    case "m":
      if (conn.inputEnabled) conn.send(startMissionLine(conn.nextSeq()));
      break;
    case "e":
      if (conn.inputEnabled) conn.send(releaseLine(conn.nextSeq()));
      break;
  }
});

window.addEventListener("keyup", (ev: KeyboardEvent) => {
  if (ev.key === " ") hand.setClasp(false);
});

// fixed-rate hand stream; repeats the held sample when nothing moved
setInterval(() => {
  if (conn.inputEnabled) {
    conn.send(hand.sampleLine(conn.nextSeq(), performance.now() / 1000));
  }
}, SEND_INTERVAL_MS);

// --- panel buttons ------------------------------------------------------------

el<HTMLButtonElement>("btnMission").addEventListener("click", () => {
  if (conn.inputEnabled) conn.send(startMissionLine(conn.nextSeq()));
});
el<HTMLButtonElement>("btnRelease").addEventListener("click", () => {
  if (conn.inputEnabled) conn.send(releaseLine(conn.nextSeq()));
});
el<HTMLButtonElement>("btnRecal").addEventListener("click", () => {
  if (conn.inputEnabled) conn.send(recalibrateLine(conn.nextSeq()));
});
el<HTMLButtonElement>("btnTrial").addEventListener("click", () => {
  if (!conn.inputEnabled) return;
  const seed = Number.parseInt(seedInput.value, 10) || 0;
  const reps = Math.max(1, Number.parseInt(repsInput.value, 10) || 10);
  conn.send(startTrialLine(conn.nextSeq(), seed, reps));
});

// answer buttons in fixed order
for (const p of ANSWER_PATTERNS) {
  const btn = document.createElement("button");
  btn.textContent = p;
  btn.addEventListener("click", () => {
    const rec = trial.answer(p as PatternId, performance.now());
    if (rec !== null && conn.inputEnabled) {
      conn.send(trialAnswerLine(conn.nextSeq(), rec.answered));
    }
  });
  trialPrompt.appendChild(btn);
}

downloadLink.addEventListener("click", () => {
  const blob = new Blob([trial.exportLog() + "\n"], { type: "application/jsonl" });
  downloadLink.href = URL.createObjectURL(blob);
});

// --- render loop --------------------------------------------------------------

function roleLabel(): string {
  if (params.role === "viewer") return "viewer";
  if (vm.granted === null) return "claiming operator...";
  return vm.granted ? "operator" : "viewer (operator slot taken)";
}

function frame(): void {
  const now = performance.now();
  const view: SceneView = {
    state: vm.latest,
    connected: vm.connected(now),
    roleLabel: roleLabel(),
    hand: conn.inputEnabled
      ? { x: hand.x, y: hand.y, height: hand.height, clasp: hand.clasp }
      : null,
  };
  drawScene(ctx!, view, cssW, cssH);

  const bits = [
    vm.connected(now) ? "connected" : "disconnected",
    roleLabel(),
    `hand ${hand.height.toFixed(2)} m`,
  ];
  if (vm.lastError !== null) bits.push(`last error: ${vm.lastError}`);
  statusLine.textContent = bits.join(" | ");

  trialPanel.style.display = trial.active ? "block" : "none";
  trialPrompt.style.display = trial.promptOpen ? "flex" : "none";
  const st = vm.latest?.trial ?? null;
  if (st !== null) {
    const where = trial.finished
      ? "done"
      : `${Math.min(st.index + 1, st.total)}/${st.total} ${st.phase}`;
    trialInfo.textContent = `${where}, ${trial.records.length} answered`;
  } else {
    trialInfo.textContent = "";
  }

  requestAnimationFrame(frame);
}
requestAnimationFrame(frame);
