"""Session orchestration: the fixed-rate loop, telemetry, metrics, and
counterbalancing.

Every run is a pure function of its config, so telemetry is reproducible
byte-for-byte and a logged steering trace can be replayed into an identical
log.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .driver import DriverParams, driver_input, driver_stream
from .feedback import ZERO_ASSIST, GuidanceParams, TorqueParams, assist_torque
from .hud import (
    AnticipationQuestion,
    HudState,
    ZoneClass,
    hud_state,
    make_anticipation_question,
    zone_of,
)
from .risk import risk_at
from .scenario import ScenarioSpec, scenario_from_dict, scenario_to_dict
from .vehicle import SimParams, VehicleState, step

HUD_ON = "hud_on"
HUD_OFF = "hud_off"
CONDITIONS = (HUD_ON, HUD_OFF)
MODES = ("headless", "live", "replay", "quiz")

TICK_RATE = 50  # Hz, fixed

TELEMETRY_FORMAT = "lassim telemetry 1"
TELEMETRY_COLUMNS = (
    "t", "x", "y", "psi", "theta", "theta_input", "tbt",
    "r_left", "r_right", "t_repel", "t_lock",
    "zone_kind", "zone_side", "zone_level",
)


class ConfigError(ValueError):
    """Session configuration is invalid for the requested run."""


@dataclass(frozen=True)
class SessionConfig:
    scenario: ScenarioSpec
    condition: str = HUD_ON
    mode: str = "headless"
    tick_rate: int = TICK_RATE
    driver: DriverParams | None = None
    torque: TorqueParams = TorqueParams()
    guidance: GuidanceParams = GuidanceParams()
    sim: SimParams = SimParams()
    seed: int = 0
    participant_index: int | None = None
    assist: bool = True

    def __post_init__(self) -> None:
        if self.condition not in CONDITIONS:
            raise ConfigError(f"condition must be one of {CONDITIONS}, got {self.condition!r}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.tick_rate != TICK_RATE:
            raise ConfigError(f"tick_rate is fixed at {TICK_RATE} Hz, got {self.tick_rate}")
        if abs(self.sim.dt - 1.0 / self.tick_rate) > 1e-12:
            raise ConfigError(
                f"sim.dt ({self.sim.dt}) must match 1/tick_rate ({1.0 / self.tick_rate})"
            )
        if self.mode == "headless" and self.driver is None:
            raise ConfigError("headless mode requires driver params")
        if self.seed < 0:
            raise ConfigError(f"seed must be unsigned, got {self.seed}")
        if self.participant_index is not None and self.participant_index < 0:
            raise ConfigError("participant_index must be >= 0")

    @property
    def hud_enabled(self) -> bool:
        return self.condition == HUD_ON


@dataclass(frozen=True)
class TelemetryRecord:
    t: float
    x: float
    y: float
    psi: float
    theta: float
    theta_input: float
    tbt: float
    r_left: float
    r_right: float
    t_repel: float
    t_lock: float
    zone: ZoneClass


@dataclass
class SessionLog:
    config: SessionConfig
    records: list[TelemetryRecord] = field(default_factory=list)


@dataclass(frozen=True)
class SessionMetrics:
    max_tbt: float
    time_in_caution: float
    time_in_critical: float
    critical_crossings: int


@dataclass(frozen=True)
class TickOutput:
    record: TelemetryRecord
    hud: HudState | None


def initial_state(spec: ScenarioSpec) -> VehicleState:
    """Sessions start centered on the road, wheels straight."""
    return VehicleState(x=0.0, y=0.0, psi=0.0, v=spec.speed, theta=0.0, theta_dot=0.0)


class Simulation:
    """Owns the evolving state of one session; one tick() call per tick.

    The caller supplies the steering input for each tick (from the synthetic
    driver, a logged trace, or a live client), which keeps replay trivially
    exact.
    """

    def __init__(self, config: SessionConfig):
        self.config = config
        self.state = initial_state(config.scenario)
        self.history: list[VehicleState] = [self.state]
        self.tick_index = 0
        self._rng = driver_stream(config.driver) if config.driver is not None else None

    def driver_steer(self) -> float:
        if self.config.driver is None or self._rng is None:
            raise ConfigError("no driver configured")
        return driver_input(self.history, self.config.sim.dt, self.config.driver, self._rng)

    def tick(
        self,
        theta_input: float,
        with_hud: bool = False,
        hud_enabled: bool | None = None,
    ) -> TickOutput:
        cfg = self.config
        state = self.state
        risk = risk_at(cfg.scenario, state.x, state.y)
        if cfg.assist:
            assist = assist_torque(cfg.scenario, state, risk, cfg.torque, cfg.guidance)
        else:
            assist = ZERO_ASSIST
        new_state, tbt = step(state, theta_input, assist, cfg.sim)
        record = TelemetryRecord(
            t=self.tick_index / cfg.tick_rate,
            x=state.x,
            y=state.y,
            psi=state.psi,
            theta=state.theta,
            theta_input=theta_input,
            tbt=tbt,
            r_left=risk.r_left,
            r_right=risk.r_right,
            t_repel=assist.repel,
            t_lock=assist.lock,
            zone=zone_of(risk),
        )
        hud = None
        if with_hud:
            enabled = cfg.hud_enabled if hud_enabled is None else hud_enabled
            hud = hud_state(cfg.scenario, state, enabled)
        self.tick_index += 1
        self.state = new_state
        self.history.append(new_state)
        return TickOutput(record=record, hud=hud)


def run_headless(
    config: SessionConfig, duration: float, inputs: Sequence[float] | None = None
) -> SessionLog:
    """Run a complete session at the fixed tick rate.

    With ``inputs`` the steering trace is replayed verbatim; otherwise the
    configured synthetic driver steers.
    """
    if duration <= 0:
        raise ConfigError(f"duration must be > 0, got {duration}")
    n_ticks = round(duration * config.tick_rate)
    if inputs is None and config.driver is None:
        raise ConfigError("headless run needs driver params or an input trace")
    if inputs is not None and len(inputs) != n_ticks:
        raise ConfigError(
            f"input trace has {len(inputs)} entries for {n_ticks} ticks"
        )
    travel = config.scenario.speed * duration
    if travel > config.scenario.road_length:
        raise ConfigError(
            f"session would travel {travel:.0f} m but the road is only "
            f"{config.scenario.road_length:.0f} m long"
        )
    sim = Simulation(config)
    log = SessionLog(config=config)
    for k in range(n_ticks):
        u = inputs[k] if inputs is not None else sim.driver_steer()
        log.records.append(sim.tick(u).record)
    return log


def replay(log: SessionLog) -> SessionLog:
    """Re-run a logged session from its own input trace and config."""
    if not log.records:
        raise ValueError("cannot replay an empty log")
    duration = len(log.records) / log.config.tick_rate
    inputs = [r.theta_input for r in log.records]
    return run_headless(log.config, duration, inputs=inputs)


def compute_metrics(log: SessionLog) -> SessionMetrics:
    """Effort and exposure metrics over one session log."""
    if not log.records:
        raise ValueError("cannot compute metrics of an empty log")
    dt = 1.0 / log.config.tick_rate
    max_tbt = max(abs(r.tbt) for r in log.records)
    in_caution = sum(1 for r in log.records if r.zone.kind == "caution")
    in_critical = sum(1 for r in log.records if r.zone.kind == "critical")
    crossings = 0
    prev = None
    for r in log.records:
        if r.zone.kind == "critical" and prev is not None and prev != "critical":
            crossings += 1
        prev = r.zone.kind
    return SessionMetrics(
        max_tbt=max_tbt,
        time_in_caution=in_caution * dt,
        time_in_critical=in_critical * dt,
        critical_crossings=crossings,
    )


def counterbalance(participant_index: int) -> tuple[str, str]:
    """Condition order for a participant: alternates with the index."""
    if participant_index % 2 == 0:
        return (HUD_ON, HUD_OFF)
    return (HUD_OFF, HUD_ON)


def quiz_freeze_ticks(n_ticks: int, count: int) -> list[int]:
    """Freeze-frame ticks evenly spread through the session interior."""
    ticks = sorted({round(n_ticks * (i + 1) / (count + 1)) for i in range(count)})
    ticks = [t for t in ticks if 0 < t < n_ticks]
    if len(ticks) != count:
        raise ConfigError(f"session too short for {count} freeze frames")
    return ticks


def generate_questions(
    config: SessionConfig, duration: float, count: int
) -> list[AnticipationQuestion]:
    """Anticipation questions from a self-driven session's freeze frames.

    The vehicle follows the guidance hands-off (zero TBT), and questions are
    generated at the same scheduled ticks the quiz server uses, so offline
    generation and a live quiz session with the same config agree exactly.
    """
    n_ticks = round(duration * config.tick_rate)
    travel = config.scenario.speed * duration
    if travel > config.scenario.road_length:
        raise ConfigError(
            f"session would travel {travel:.0f} m but the road is only "
            f"{config.scenario.road_length:.0f} m long"
        )
    freezes = quiz_freeze_ticks(n_ticks, count)
    rng = np.random.Generator(np.random.PCG64(config.seed))
    sim = Simulation(config)
    questions = []
    for k in range(freezes[-1] + 1):
        if len(questions) < count and k == freezes[len(questions)]:
            questions.append(
                make_anticipation_question(config.scenario, sim.state, rng)
            )
        sim.tick(sim.state.theta)
    return questions


# --- config serialization ---------------------------------------------------


def config_to_dict(config: SessionConfig) -> dict:
    driver = config.driver
    return {
        "scenario": scenario_to_dict(config.scenario),
        "condition": config.condition,
        "mode": config.mode,
        "tick_rate": config.tick_rate,
        "driver": None
        if driver is None
        else {
            "target_y": driver.target_y,
            "kp": driver.kp,
            "kd": driver.kd,
            "delay": driver.delay,
            "noise_sd": driver.noise_sd,
            "seed": driver.seed,
        },
        "torque": {
            "t_max": config.torque.t_max,
            "gamma": config.torque.gamma,
            "lock_stiffness": config.torque.lock_stiffness,
            "lock_saturation": config.torque.lock_saturation,
            "slew_limit": config.torque.slew_limit,
        },
        "guidance": {
            "preview": config.guidance.preview,
            "kp": config.guidance.kp,
            "kd": config.guidance.kd,
            "max_wheel_angle": config.guidance.max_wheel_angle,
        },
        "sim": {
            "dt": config.sim.dt,
            "wheelbase": config.sim.wheelbase,
            "steering_ratio": config.sim.steering_ratio,
            "wheel_inertia": config.sim.wheel_inertia,
            "k_tb": config.sim.k_tb,
            "damping": config.sim.damping,
        },
        "seed": config.seed,
        "participant_index": config.participant_index,
        "assist": config.assist,
    }


def config_from_dict(doc: dict) -> SessionConfig:
    driver = doc.get("driver")
    return SessionConfig(
        scenario=scenario_from_dict(doc["scenario"]),
        condition=doc["condition"],
        mode=doc["mode"],
        tick_rate=doc["tick_rate"],
        driver=None if driver is None else DriverParams(**driver),
        torque=TorqueParams(**doc["torque"]),
        guidance=GuidanceParams(**doc["guidance"]),
        sim=SimParams(**doc["sim"]),
        seed=doc["seed"],
        participant_index=doc["participant_index"],
        assist=doc["assist"],
    )


def config_to_json(config: SessionConfig) -> str:
    return json.dumps(config_to_dict(config), sort_keys=True, separators=(",", ":"))


# --- telemetry CSV ----------------------------------------------------------


def _fmt(v: float) -> str:
    return repr(float(v))


def dumps_log(log: SessionLog) -> str:
    """Self-describing CSV: a commented header with the full config JSON,
    then one row per tick in TelemetryRecord field order."""
    lines = [
        f"# {TELEMETRY_FORMAT}",
        f"# config: {config_to_json(log.config)}",
        ",".join(TELEMETRY_COLUMNS),
    ]
    for r in log.records:
        lines.append(
            ",".join(
                (
                    _fmt(r.t), _fmt(r.x), _fmt(r.y), _fmt(r.psi), _fmt(r.theta),
                    _fmt(r.theta_input), _fmt(r.tbt), _fmt(r.r_left), _fmt(r.r_right),
                    _fmt(r.t_repel), _fmt(r.t_lock),
                    r.zone.kind, r.zone.side, _fmt(r.zone.level),
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_log(log: SessionLog, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_log(log))


def loads_log(text: str) -> SessionLog:
    lines = text.splitlines()
    if len(lines) < 3 or lines[0] != f"# {TELEMETRY_FORMAT}":
        raise ValueError("not a telemetry file")
    prefix = "# config: "
    if not lines[1].startswith(prefix):
        raise ValueError("telemetry file missing config header")
    config = config_from_dict(json.loads(lines[1][len(prefix):]))
    if lines[2] != ",".join(TELEMETRY_COLUMNS):
        raise ValueError("unexpected telemetry columns")
    records = []
    for line in lines[3:]:
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != len(TELEMETRY_COLUMNS):
            raise ValueError(f"malformed telemetry row: {line!r}")
        records.append(
            TelemetryRecord(
                t=float(parts[0]), x=float(parts[1]), y=float(parts[2]),
                psi=float(parts[3]), theta=float(parts[4]), theta_input=float(parts[5]),
                tbt=float(parts[6]), r_left=float(parts[7]), r_right=float(parts[8]),
                t_repel=float(parts[9]), t_lock=float(parts[10]),
                zone=ZoneClass(kind=parts[11], side=parts[12], level=float(parts[13])),
            )
        )
    return SessionLog(config=config, records=records)


def read_log(path: str) -> SessionLog:
    with open(path, encoding="utf-8") as fh:
        return loads_log(fh.read())
