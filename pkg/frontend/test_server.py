"""Bridge smoke test: drives the WebSocket endpoint like the browser does.

Run explicitly (the main suite lives in ../tests):

    pytest frontend/test_server.py
"""

import json

import numpy as np
from starlette.testclient import TestClient

from server import app


def test_bridge_session_roundtrip():
    client = TestClient(app)
    with client.websocket_connect("/ws") as ws:
        ws.send_text(json.dumps({"type": "create", "sampleRate": 48000}))
        ready = json.loads(ws.receive_text())
        assert ready["type"] == "ready"
        assert ready["n"] == 128
        assert "sustain" in ready["bounds"]

        ws.send_text(json.dumps({"type": "note_on", "note": 69, "velocity": 100}))
        ws.send_text(json.dumps({"type": "pull", "frames": 2048}))
        payload = ws.receive_bytes()
        audio = np.frombuffer(payload, dtype=np.float32)
        assert audio.size == 2 * 2048
        assert np.any(audio != 0)

        ws.send_text(json.dumps({"type": "frame"}))
        frame = json.loads(ws.receive_text())
        assert frame["type"] == "frame"
        assert len(frame["density"]) == 128
        assert len(frame["potential"]) == 128

        ws.send_text(json.dumps({"type": "set_param", "id": "sim_speed", "value": 0}))
        ws.send_text(json.dumps({"type": "note_off", "note": 69}))
        ws.send_text(json.dumps({"type": "pull", "frames": 512}))
        assert len(ws.receive_bytes()) == 2 * 512 * 4


def test_bridge_requires_create_first():
    client = TestClient(app)
    with client.websocket_connect("/ws") as ws:
        ws.send_text(json.dumps({"type": "pull", "frames": 512}))
        reply = json.loads(ws.receive_text())
        assert reply["type"] == "error"


def test_static_files_served():
    client = TestClient(app)
    index = client.get("/")
    assert index.status_code == 200
    assert "psiwave playground" in index.text
