"""Real-time WebSocket server for the cockpit client.

The server owns the simulation clock; the client renders ticks and sends
steering angles.  Inputs are last-write-wins and are sampled once per tick
boundary, so an input arriving mid-tick affects the next tick.  Quiz mode
pauses the stream at scheduled freeze frames and records answers.
"""

from __future__ import annotations

import asyncio
import contextlib
import json
import logging
import time
from dataclasses import asdict, dataclass

import numpy as np
from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from . import __version__
from .hud import make_anticipation_question
from .session import ConfigError, SessionConfig, Simulation, quiz_freeze_ticks
from .stats import anticipation_score
from .wire import (
    ProtocolError,
    end_message,
    hello_message,
    parse_client_message,
    pause_message,
    question_message,
    resume_message,
    tick_message,
)

log = logging.getLogger(__name__)

DEFAULT_DURATION = 150.0  # s, the study's ~2.5 minute session
DEFAULT_QUIZ_COUNT = 4


@dataclass(frozen=True)
class AnswerRecord:
    question_id: int
    chosen_index: int
    correct_index: int
    correct: bool
    asked_t: float         # sim time of the freeze frame
    response_time: float   # wall-clock s between question and answer


def build_app(
    config: SessionConfig,
    duration: float = DEFAULT_DURATION,
    quiz_count: int = DEFAULT_QUIZ_COUNT,
    realtime: bool = True,
    answers_path: str | None = None,
) -> FastAPI:
    if config.mode not in ("live", "quiz"):
        raise ConfigError(f"serve requires live or quiz mode, got {config.mode!r}")
    n_ticks = round(duration * config.tick_rate)
    travel = config.scenario.speed * duration
    if travel > config.scenario.road_length:
        raise ConfigError(
            f"session would travel {travel:.0f} m but the road is only "
            f"{config.scenario.road_length:.0f} m long"
        )
    freeze_ticks = quiz_freeze_ticks(n_ticks, quiz_count) if config.mode == "quiz" else []

    app = FastAPI()
    app.state.busy = False
    app.state.answers = []

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket) -> None:
        if app.state.busy:
            await ws.close(code=1008, reason="session already has a client")
            return
        app.state.busy = True
        try:
            await _run_session(app, ws, config, n_ticks, freeze_ticks, realtime, answers_path)
        finally:
            app.state.busy = False

    return app


async def _run_session(
    app: FastAPI,
    ws: WebSocket,
    config: SessionConfig,
    n_ticks: int,
    freeze_ticks: list[int],
    realtime: bool,
    answers_path: str | None,
) -> None:
    await ws.accept()
    await ws.send_json(hello_message(config, n_ticks / config.tick_rate, __version__))

    mailbox = {"steer": 0.0}
    answers: asyncio.Queue[dict] = asyncio.Queue()
    stopped = asyncio.Event()
    abort_reason: list[str] = []

    async def reader() -> None:
        try:
            while True:
                msg = parse_client_message(await ws.receive_text())
                if msg["type"] == "input":
                    mailbox["steer"] = msg["steer"]
                else:
                    answers.put_nowait(msg)
        except WebSocketDisconnect:
            stopped.set()
        except ProtocolError as exc:
            abort_reason.append(str(exc))
            stopped.set()

    reader_task = asyncio.create_task(reader())
    sim = Simulation(config)
    quiz = config.mode == "quiz"
    rng = np.random.Generator(np.random.PCG64(config.seed))
    recorded: list[AnswerRecord] = []
    pending = sorted(freeze_ticks)
    loop = asyncio.get_running_loop()
    start = loop.time()

    try:
        for seq in range(n_ticks):
            if stopped.is_set():
                break
            if quiz and pending and seq == pending[0]:
                pending.pop(0)
                await ws.send_json(pause_message())
                question = make_anticipation_question(config.scenario, sim.state, rng)
                qid = len(recorded) + 1
                asked_wall = time.monotonic()
                await ws.send_json(question_message(qid, question))
                answer = await _next_answer(answers, stopped)
                if answer is None:
                    break
                if answer["id"] != qid:
                    abort_reason.append(
                        f"answer for question {answer['id']} while {qid} was pending"
                    )
                    break
                recorded.append(
                    AnswerRecord(
                        question_id=qid,
                        chosen_index=answer["chosen_index"],
                        correct_index=question.correct_index,
                        correct=answer["chosen_index"] == question.correct_index,
                        asked_t=seq / config.tick_rate,
                        response_time=time.monotonic() - asked_wall,
                    )
                )
                await ws.send_json(resume_message())
            theta_input = sim.state.theta if quiz else mailbox["steer"]
            out = sim.tick(theta_input, with_hud=True, hud_enabled=False if quiz else None)
            await ws.send_json(tick_message(seq, out.record, out.hud))
            if realtime:
                target = start + (seq + 1) / config.tick_rate
                delay = target - loop.time()
                if delay > 0:
                    await asyncio.sleep(delay)
            else:
                await asyncio.sleep(0)
        else:
            await ws.send_json(end_message(len(recorded)))
            await ws.close(code=1000)
    except (WebSocketDisconnect, RuntimeError):
        pass
    finally:
        reader_task.cancel()
        with contextlib.suppress(asyncio.CancelledError, Exception):
            await reader_task
        app.state.answers = recorded
        if abort_reason:
            log.error("session aborted: %s", abort_reason[0])
            with contextlib.suppress(RuntimeError):
                await ws.close(code=1002, reason=abort_reason[0][:120])
        if answers_path is not None and recorded:
            _write_answers(answers_path, recorded)


async def _next_answer(queue: asyncio.Queue, stopped: asyncio.Event) -> dict | None:
    """Block until the client answers or the session stops."""
    get = asyncio.ensure_future(queue.get())
    stop = asyncio.ensure_future(stopped.wait())
    done, _ = await asyncio.wait({get, stop}, return_when=asyncio.FIRST_COMPLETED)
    if get in done:
        stop.cancel()
        return get.result()
    get.cancel()
    return None


def _write_answers(path: str, recorded: list[AnswerRecord]) -> None:
    score = anticipation_score([(a.chosen_index, a.correct_index) for a in recorded])
    doc = {"answers": [asdict(a) for a in recorded], "score": score}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def serve(
    config: SessionConfig,
    port: int,
    host: str = "127.0.0.1",
    duration: float = DEFAULT_DURATION,
    quiz_count: int = DEFAULT_QUIZ_COUNT,
    answers_path: str | None = None,
) -> None:
    """Run the cockpit server until shutdown (Ctrl-C)."""
    import uvicorn

    app = build_app(
        config,
        duration=duration,
        quiz_count=quiz_count,
        realtime=True,
        answers_path=answers_path,
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")
