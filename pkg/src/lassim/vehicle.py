"""Fixed-timestep vehicle and steering-column dynamics.

The steering wheel is a single inertia driven by three torques: the torsion
bar connecting it to the driver's commanded angle, the assistance torque,
and viscous damping.  Torsion Bar Torque (TBT) is the effort signal the
study analytics consume.  The chassis is a kinematic bicycle at constant
speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .feedback import AssistTorque

PSI_LIMIT = math.pi / 2 - 1e-3  # rad; highway-driving clamp on heading


@dataclass(frozen=True)
class VehicleState:
    x: float
    y: float
    psi: float        # rad, heading; 0 = along +x
    v: float          # m/s, constant
    theta: float      # rad, steering-wheel angle
    theta_dot: float  # rad/s


@dataclass(frozen=True)
class SimParams:
    dt: float = 0.02              # s (50 Hz)
    wheelbase: float = 2.8        # m
    steering_ratio: float = 15.0  # wheel angle / road-wheel angle
    wheel_inertia: float = 0.05   # kg m^2
    k_tb: float = 5.0             # Nm/rad, torsion bar stiffness
    damping: float = 0.5          # Nm s/rad, viscous damping on the wheel

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.steering_ratio <= 0:
            raise ValueError(f"steering_ratio must be > 0, got {self.steering_ratio}")
        if self.wheel_inertia <= 0:
            raise ValueError(f"wheel_inertia must be > 0, got {self.wheel_inertia}")
        if self.k_tb <= 0:
            raise ValueError(f"k_tb must be > 0, got {self.k_tb}")
        if self.damping < 0:
            raise ValueError(f"damping must be >= 0, got {self.damping}")

    @property
    def k_input(self) -> float:
        """Driver-side input stiffness; identical to the torsion bar's."""
        return self.k_tb


def step(
    state: VehicleState, theta_input: float, assist: "AssistTorque", params: SimParams
) -> tuple[VehicleState, float]:
    """Advance one tick; returns the new state and the tick's TBT.

    Semi-implicit Euler on the wheel (velocity first, then angle), then the
    kinematic bicycle update.  All double precision, no hidden state.
    """
    values = (state.x, state.y, state.psi, state.v, state.theta, state.theta_dot,
              theta_input, assist.total)
    if not all(math.isfinite(v) for v in values):
        raise ValueError("non-finite input to vehicle step")

    tbt = params.k_tb * (theta_input - state.theta)
    net = tbt + assist.total - params.damping * state.theta_dot
    theta_dot = state.theta_dot + params.dt * net / params.wheel_inertia
    theta = state.theta + params.dt * theta_dot

    delta = theta / params.steering_ratio
    x = state.x + state.v * math.cos(state.psi) * params.dt
    y = state.y + state.v * math.sin(state.psi) * params.dt
    psi = state.psi + (state.v / params.wheelbase) * math.tan(delta) * params.dt
    psi = min(max(psi, -PSI_LIMIT), PSI_LIMIT)

    return VehicleState(x=x, y=y, psi=psi, v=state.v, theta=theta, theta_dot=theta_dot), tbt
