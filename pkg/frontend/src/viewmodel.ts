// Latest-state buffer between the socket and the renderer.
//
// The console never simulates locally: everything drawn comes from the most
// recent server frame.  Message arrival and rendering are decoupled; the
// render loop reads whatever is newest whenever it wants.

import { decodeServerMsg, ProtocolError, StateMsg } from "./protocol.js";

export const STALE_AFTER_MS = 1000;

export class ViewModel {
  latest: StateMsg | null = null;
  lastFrameAt: number | null = null; // ms clock of last accepted state frame
  framesSeen = 0;
  regressions = 0; // out-of-order state frames ignored
  decodeErrors = 0;
  granted: boolean | null = null; // null until the server answers a claim
  grantedRole: string | null = null;
  lastError: string | null = null;
  // fires on every accepted state frame, independent of render cadence
  onState: ((s: StateMsg) => void) | null = null;

  // Feed one text frame from the socket. Returns the decoded message, or
  // null if the line was unusable (counted, never thrown: a bad frame must
  // not kill the connection).
  ingest(line: string, nowMs: number): ReturnType<typeof decodeServerMsg> | null {
    let msg;
    try {
      msg = decodeServerMsg(line);
    } catch (e) {
      if (e instanceof ProtocolError) {
        this.decodeErrors += 1;
        this.lastError = e.message;
        return null;
      }
      throw e;
    }
    if (msg.type === "state") {
      this.framesSeen += 1;
      if (this.latest !== null && msg.tick < this.latest.tick) {
        this.regressions += 1; // keep the newer frame
        return msg;
      }
      this.latest = msg;
      this.lastFrameAt = nowMs;
      this.onState?.(msg);
    } else if (msg.type === "role") {
      this.granted = msg.granted;
      this.grantedRole = msg.role;
    } else {
      this.lastError = msg.detail;
    }
    return msg;
  }

  connected(nowMs: number): boolean {
    return this.lastFrameAt !== null && nowMs - this.lastFrameAt <= STALE_AFTER_MS;
  }
}
