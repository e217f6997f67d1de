"""Deterministic driving simulator with risk-based lateral assistance."""

from .driver import DriverParams, driver_input, driver_stream
from .feedback import (
    ZERO_ASSIST,
    AssistTorque,
    GuidanceParams,
    TorqueParams,
    assist_torque,
    guidance_angle,
    lock_torque,
    net_repel,
    torque_from_risk,
)
from .hud import (
    AnticipationQuestion,
    HudState,
    QuestionGenerationError,
    ZoneClass,
    hud_state,
    make_anticipation_question,
    zone_of,
)
from .risk import RiskProfile, RiskSample, risk_at, risk_from_distance, risk_profile
from .scenario import (
    Corridor,
    ObstacleSpec,
    ScenarioError,
    ScenarioSpec,
    corridor_at,
    load_scenario,
    obstacle_course,
    parse_scenario,
    straight_road,
)
from .session import (
    ConfigError,
    SessionConfig,
    SessionLog,
    SessionMetrics,
    TelemetryRecord,
    compute_metrics,
    counterbalance,
    read_log,
    replay,
    run_headless,
    write_log,
)
from .stats import (
    AcceptanceScores,
    DegenerateDataError,
    PairedSamples,
    TTestResult,
    VanDerLaanResponse,
    anticipation_score,
    mean_sd,
    paired_t_test,
    t_sf,
    van_der_laan,
)
from .vehicle import SimParams, VehicleState, step

__version__ = "0.1.0"
