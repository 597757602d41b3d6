// Socket lifecycle and the one shared seq counter.
//
// The server drops any inbound message whose seq does not increase, across
// all message kinds on the connection, so every sender goes through
// nextSeq() here.  One socket at a time; a dropped connection is retried
// after a short pause and the viewmodel's staleness banner covers the gap.

import { claimLine } from "./protocol.js";
import { ViewModel } from "./viewmodel.js";

export interface ConsoleParams {
  server: string; // host[:port]
  role: "operator" | "viewer";
}

export function parseParams(search: string, defaultHost: string): ConsoleParams {
  const q = new URLSearchParams(search);
  const server = q.get("server") ?? defaultHost;
  const role = q.get("role") === "viewer" ? "viewer" : "operator";
  return { server, role };
}

export class Connection {
  private ws: WebSocket | null = null;
  private seq = 0;
  private closed = false;
  private retryTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly params: ConsoleParams,
    private readonly vm: ViewModel,
    private readonly now: () => number = () => performance.now(),
  ) {}

  nextSeq(): number {
    return this.seq++;
  }

  get operator(): boolean {
    return this.params.role === "operator";
  }

  // granted === null means the claim is still in flight
  get inputEnabled(): boolean {
    return this.operator && this.vm.granted === true;
  }

  open(): void {
    this.closed = false;
    const ws = new WebSocket(`ws://${this.params.server}/ws`);
    this.ws = ws;
    ws.onopen = () => {
      // viewers just listen; the operator role must be claimed explicitly
      if (this.operator) ws.send(claimLine(this.nextSeq(), "operator"));
    };
    ws.onmessage = (ev: MessageEvent) => {
      if (typeof ev.data === "string") this.vm.ingest(ev.data, this.now());
    };
    ws.onclose = () => {
      this.ws = null;
      if (!this.closed) {
        this.retryTimer = setTimeout(() => this.open(), 1000);
      }
    };
    ws.onerror = () => ws.close();
  }

  send(line: string): boolean {
    if (this.ws === null || this.ws.readyState !== WebSocket.OPEN) return false;
    this.ws.send(line);
    return true;
  }

  close(): void {
    this.closed = true;
    if (this.retryTimer !== null) clearTimeout(this.retryTimer);
    this.ws?.close();
  }
}
