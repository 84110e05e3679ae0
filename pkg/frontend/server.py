#!/usr/bin/env python3
"""Static-file host plus WebSocket bridge to the engine's boundary API.

One engine per connection; every message maps one-to-one onto a boundary
call. The browser does all interaction; this process never interprets
parameters or audio. Run from this directory:

    python server.py [--port 8765]
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

import uvicorn
from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from psiwave import boundary

MAX_PULL_FRAMES = 8192

app = FastAPI()


def _engine_config(sample_rate: float) -> str:
    return json.dumps({
        "engine": {"sample_rate": sample_rate, "n": 128, "dt": 1e-3,
                   "sim_speed": 2000, "stereo_mode": "weighted",
                   "master_gain": 0.5},
        "envelope": {"attack": 0.01, "decay": 0.1, "sustain": 0.8,
                     "release": 0.25},
        "initial": {"center": 3.141592653589793 + 0.5, "sigma": 0.35,
                    "momentum": 0.0},
        "potential": {"kind": "harmonic", "strength": 1.0,
                      "center": 3.141592653589793},
    })


@app.websocket("/ws")
async def engine_bridge(ws: WebSocket) -> None:
    await ws.accept()
    handle: int | None = None
    try:
        while True:
            message = json.loads(await ws.receive_text())
            kind = message.get("type")
            if kind == "create":
                if handle is not None:
                    boundary.engine_destroy(handle)
                sample_rate = float(message.get("sampleRate", 48000))
                handle = boundary.engine_create(_engine_config(sample_rate))
                await ws.send_text(json.dumps({
                    "type": "ready",
                    "n": 128,
                    "sampleRate": sample_rate,
                    "bounds": boundary.engine_param_bounds(handle),
                }))
            elif handle is None:
                await ws.send_text(json.dumps(
                    {"type": "error", "message": "engine not created yet"}))
            elif kind == "note_on":
                boundary.engine_note_on(handle, int(message["note"]),
                                        int(message.get("velocity", 100)))
            elif kind == "note_off":
                boundary.engine_note_off(handle, int(message["note"]))
            elif kind == "set_param":
                boundary.engine_set_param(handle, str(message["id"]),
                                          float(message["value"]))
            elif kind == "pull":
                frames = min(int(message.get("frames", 2048)), MAX_PULL_FRAMES)
                block = boundary.engine_process(handle, frames)
                await ws.send_bytes(block.tobytes())
            elif kind == "frame":
                density, potential = boundary.engine_visual_frame(handle)
                await ws.send_text(json.dumps({
                    "type": "frame",
                    "density": density.tolist(),
                    "potential": potential.tolist(),
                }))
            else:
                await ws.send_text(json.dumps(
                    {"type": "error", "message": f"unknown message type {kind!r}"}))
    except WebSocketDisconnect:
        pass
    finally:
        if handle is not None:
            boundary.engine_destroy(handle)


app.mount("/", StaticFiles(directory=Path(__file__).parent / "static", html=True),
          name="static")


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--port", type=int, default=8765)
    parser.add_argument("--host", default="127.0.0.1")
    args = parser.parse_args()
    uvicorn.run(app, host=args.host, port=args.port)
