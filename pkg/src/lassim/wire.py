"""Wire protocol: one JSON object per WebSocket text frame.

Server to client: hello, tick, pause, question, resume, end.
Client to server: input {steer}, answer {id, chosen_index}.
"""

from __future__ import annotations

import json
import math

from .hud import AnticipationQuestion, HudState, hud_to_dict
from .session import SessionConfig, TelemetryRecord, config_to_dict

PROTOCOL_VERSION = 1


class ProtocolError(ValueError):
    """Client sent a frame that violates the protocol."""


def hello_message(config: SessionConfig, duration: float, version: str) -> dict:
    return {
        "type": "hello",
        "protocol": PROTOCOL_VERSION,
        "version": version,
        "duration": duration,
        "config": config_to_dict(config),
    }


def tick_message(seq: int, record: TelemetryRecord, hud: HudState) -> dict:
    return {
        "type": "tick",
        "seq": seq,
        "t": record.t,
        "vehicle": {
            "x": record.x,
            "y": record.y,
            "psi": record.psi,
            "theta": record.theta,
        },
        "hud": hud_to_dict(hud),
        "torque": {
            "repel": record.t_repel,
            "lock": record.t_lock,
            "total": record.t_repel + record.t_lock,
            "tbt": record.tbt,
        },
    }


def pause_message() -> dict:
    return {"type": "pause"}


def resume_message() -> dict:
    return {"type": "resume"}


def question_message(question_id: int, question: AnticipationQuestion) -> dict:
    return {
        "type": "question",
        "id": question_id,
        "options": [hud_to_dict(o) for o in question.options],
        "scene": {
            "x": question.frozen.x,
            "y": question.frozen.y,
            "speed": question.frozen.v,
        },
    }


def end_message(answers_recorded: int) -> dict:
    return {"type": "end", "answers_recorded": answers_recorded}


def parse_client_message(text: str) -> dict:
    """Validate an incoming frame; returns the decoded message."""
    try:
        msg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"frame is not valid JSON: {exc.msg}") from exc
    if not isinstance(msg, dict) or "type" not in msg:
        raise ProtocolError("frame must be an object with a 'type' field")
    kind = msg["type"]
    if kind == "input":
        steer = msg.get("steer")
        if isinstance(steer, bool) or not isinstance(steer, (int, float)):
            raise ProtocolError("input.steer must be a number")
        if not math.isfinite(steer):
            raise ProtocolError("input.steer must be finite")
        return {"type": "input", "steer": float(steer)}
    if kind == "answer":
        qid = msg.get("id")
        chosen = msg.get("chosen_index")
        if isinstance(qid, bool) or not isinstance(qid, int):
            raise ProtocolError("answer.id must be an integer")
        if isinstance(chosen, bool) or not isinstance(chosen, int) or not 0 <= chosen <= 3:
            raise ProtocolError("answer.chosen_index must be an integer in [0, 3]")
        return {"type": "answer", "id": qid, "chosen_index": chosen}
    raise ProtocolError(f"unknown client message type {kind!r}")
