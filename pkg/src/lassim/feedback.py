"""Risk-to-torque conversion for the steering wheel.

Two components act on the wheel: a repelling torque that grows with risk and
pushes away from the riskier side, and a saturated spring ("lock") that holds
the wheel at the guidance angle.  The lock saturates at 2 Nm by default so a
driver applying more than that through the torsion bar always wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .risk import RiskSample, risk_at
from .scenario import ScenarioSpec
from .vehicle import VehicleState


@dataclass(frozen=True)
class TorqueParams:
    t_max: float = 2.0             # Nm, repelling torque at full risk
    gamma: float = 1.0             # exponent of the risk-to-torque curve
    lock_stiffness: float = 20.0   # Nm/rad
    lock_saturation: float = 2.0   # Nm, driver override threshold
    slew_limit: float | None = None  # Nm/s, optional; for force-feedback rigs

    def __post_init__(self) -> None:
        if self.t_max <= 0:
            raise ValueError(f"t_max must be > 0, got {self.t_max}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.lock_stiffness < 0:
            raise ValueError(f"lock_stiffness must be >= 0, got {self.lock_stiffness}")
        if self.lock_saturation <= 0:
            raise ValueError(f"lock_saturation must be > 0, got {self.lock_saturation}")


@dataclass(frozen=True)
class GuidanceParams:
    preview: float = 20.0                 # m ahead used to pick the target lane
    kp: float = 0.3                       # rad of wheel angle per m of lateral error
    kd: float = 0.2                       # rad s/m on lateral speed
    max_wheel_angle: float = 2 * math.pi  # rad


@dataclass(frozen=True)
class AssistTorque:
    """Torque applied to the steering wheel; positive steers left."""

    repel: float
    lock: float
    total: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "total", self.repel + self.lock)


ZERO_ASSIST = AssistTorque(repel=0.0, lock=0.0)


def torque_from_risk(r: float, params: TorqueParams) -> float:
    """Repelling torque magnitude t_max * r^gamma; 0 at zero risk."""
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"risk must be in [0, 1], got {r}")
    return params.t_max * r ** params.gamma

def net_repel(risk: RiskSample, params: TorqueParams) -> float:
    """Signed repelling torque; positive steers left, away from the right boundary."""
    return torque_from_risk(risk.r_right, params) - torque_from_risk(risk.r_left, params)


def lock_torque(theta: float, theta_guidance: float, params: TorqueParams) -> float:
    """Saturated spring toward the guidance angle."""
    t = -params.lock_stiffness * (theta - theta_guidance)
    return min(max(t, -params.lock_saturation), params.lock_saturation)


def guidance_angle(
    spec: ScenarioSpec, state: VehicleState, params: GuidanceParams
) -> float:
    """Steering-wheel angle the lock pulls toward.

    Targets the lane center with minimal risk at the preview station ahead
    (ties go to the lane closest to the current position), then applies a
    PD law on the lateral error.
    """
    x_preview = min(state.x + params.preview, spec.road_length)
    centers = spec.lane_centers()
    current = min(centers, key=lambda c: abs(c - state.y))
    best = min(
        centers,
        key=lambda c: (risk_at(spec, x_preview, c).level, abs(c - current)),
    )
    vy = state.v * math.sin(state.psi)
    angle = params.kp * (best - state.y) - params.kd * vy
    return min(max(angle, -params.max_wheel_angle), params.max_wheel_angle)


def assist_torque(
    spec: ScenarioSpec,
    state: VehicleState,
    risk: RiskSample,
    torque: TorqueParams,
    guidance: GuidanceParams,
) -> AssistTorque:
    """Full assistance torque at the current state: repel + lock."""
    repel = net_repel(risk, torque)
    theta_g = guidance_angle(spec, state, guidance)
    lock = lock_torque(state.theta, theta_g, torque)
    return AssistTorque(repel=repel, lock=lock)
