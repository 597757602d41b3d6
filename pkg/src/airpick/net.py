"""WebSocket telemetry server.

One process hosts one simulator.  Clients connect to /ws, claim a role, and
exchange newline-free JSON text frames (one message per frame).  The first
claimant becomes the operator; everyone else observes.  Only operator input
reaches the simulator.  A background task steps the simulation at the
configured tick rate and fans the state frame out to every client.
"""

from __future__ import annotations

import asyncio
import contextlib
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import FileResponse, PlainTextResponse

from .engine import SessionRecorder, Simulator
from .protocol import (
    ClaimMsg,
    DecodeError,
    ErrorMsg,
    OutboundMsg,
    RoleMsg,
    decode_msg,
    encode_msg,
)
from .types import SimConfig


class ClientInfo:
    __slots__ = ("role", "last_seq", "dropped")

    def __init__(self) -> None:
        self.role = "observer"
        self.last_seq = -1
        self.dropped = 0


class Hub:
    """Connection registry plus the shared simulator, guarded by one lock."""

    def __init__(self, sim: Simulator):
        self.sim = sim
        self.clients: dict[WebSocket, ClientInfo] = {}
        self.lock = asyncio.Lock()
        self.operator: WebSocket | None = None
        self.last_out: OutboundMsg | None = None

    async def attach(self, ws: WebSocket) -> ClientInfo:
        async with self.lock:
            info = ClientInfo()
            self.clients[ws] = info
            return info

    async def detach(self, ws: WebSocket) -> None:
        async with self.lock:
            self.clients.pop(ws, None)
            if self.operator is ws:
                self.operator = None

    async def claim(self, ws: WebSocket, msg: ClaimMsg) -> RoleMsg:
        async with self.lock:
            info = self.clients[ws]
            if msg.role == "operator" and self.operator in (None, ws):
                self.operator = ws
                info.role = "operator"
                return RoleMsg(granted=True, role="operator")
            info.role = "observer"
            return RoleMsg(granted=msg.role == "observer", role="observer")

    async def handle(self, ws: WebSocket, line: str) -> str | None:
        """Returns a reply line for the sender, or None."""
        try:
            msg = decode_msg(line)
        except DecodeError as exc:
            return encode_msg(ErrorMsg(detail=str(exc)))
        info = self.clients[ws]
        if msg.seq <= info.last_seq:
            info.dropped += 1
            async with self.lock:
                self.sim.dropped += 1
            return None
        info.last_seq = msg.seq
        if isinstance(msg, ClaimMsg):
            return encode_msg(await self.claim(ws, msg))
        if info.role != "operator":
            info.dropped += 1
            return encode_msg(ErrorMsg(detail="observer input ignored"))
        async with self.lock:
            self.sim.submit(msg)
        return None

    async def step_and_broadcast(self) -> str:
        async with self.lock:
            self.last_out = self.sim.tick()
            line = encode_msg(self.last_out)
            targets = list(self.clients)
        for ws in targets:
            try:
                await ws.send_text(line)
            except Exception:
                await self.detach(ws)
        return line


async def _tick_loop(hub: Hub, tick_rate: float) -> None:
    dt = 1.0 / tick_rate
    loop = asyncio.get_running_loop()
    next_deadline = loop.time()
    while True:
        await hub.step_and_broadcast()
        next_deadline += dt
        delay = next_deadline - loop.time()
        if delay > 0:
            await asyncio.sleep(delay)
        else:
            next_deadline = loop.time()  # fell behind; do not spiral


def create_app(
    cfg: SimConfig,
    record_path: str | Path | None = None,
    frontend_dir: str | Path | None = None,
    run_clock: bool = True,
) -> FastAPI:
    """Build the ASGI app.  run_clock=False skips the realtime loop so tests
    can step the hub by hand."""
    recorder = SessionRecorder(cfg) if record_path is not None else None
    sim = Simulator(cfg, recorder=recorder)
    hub = Hub(sim)

    @contextlib.asynccontextmanager
    async def lifespan(app: FastAPI):
        task = None
        if run_clock:
            task = asyncio.create_task(_tick_loop(hub, cfg.tick_rate))
        try:
            yield
        finally:
            if task is not None:
                task.cancel()
                with contextlib.suppress(asyncio.CancelledError):
                    await task
            # the last broadcast doubles as the final snapshot, so a live
            # recording verifies on replay just like a scripted one
            if recorder is not None and record_path is not None:
                recorder.write(record_path, sim, final=hub.last_out)

    app = FastAPI(lifespan=lifespan)
    app.state.hub = hub

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket) -> None:
        await ws.accept()
        await hub.attach(ws)
        try:
            while True:
                line = await ws.receive_text()
                reply = await hub.handle(ws, line)
                if reply is not None:
                    await ws.send_text(reply)
        except WebSocketDisconnect:
            pass
        finally:
            await hub.detach(ws)

    front = None if frontend_dir is None else Path(frontend_dir)

    @app.get("/")
    async def index():
        if front is not None and (front / "index.html").is_file():
            return FileResponse(front / "index.html")
        return PlainTextResponse("airpick server: connect a client to /ws\n")

    if front is not None:

        @app.get("/{asset:path}")
        async def asset(asset: str):
            target = (front / asset).resolve()
            if front.resolve() in target.parents and target.is_file():
                return FileResponse(target)
            return PlainTextResponse("not found\n", status_code=404)

    return app


__all__ = ["ClientInfo", "Hub", "create_app"]
