"""Synthetic driver for headless batch experiments.

Tracks a fixed target lateral position with a PD law, a reaction delay
implemented by reading back into the state history, and seeded Gaussian
steering noise.  The driver is deliberately oblivious to obstacles: the
assistance system is what has to keep it out of trouble.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .vehicle import VehicleState


@dataclass(frozen=True)
class DriverParams:
    # kp/kd sit well inside the stable region for the default steering and
    # chassis parameters; higher proportional gain oscillates at 25 m/s with
    # the 0.25 s reaction delay.
    target_y: float
    kp: float = 0.15       # rad of wheel angle per m of lateral error
    kd: float = 0.15       # rad s/m on lateral speed
    delay: float = 0.25    # s of reaction delay
    noise_sd: float = 0.02  # rad of steering noise per tick
    seed: int = 0

    def __post_init__(self) -> None:
        if self.delay < 0:
            raise ValueError(f"delay must be >= 0, got {self.delay}")
        if self.noise_sd < 0:
            raise ValueError(f"noise_sd must be >= 0, got {self.noise_sd}")
        if self.seed < 0:
            raise ValueError(f"seed must be unsigned, got {self.seed}")


def driver_stream(params: DriverParams) -> np.random.Generator:
    """Fresh deterministic noise stream for one session."""
    return np.random.Generator(np.random.PCG64(params.seed))


def driver_input(
    history: Sequence[VehicleState],
    dt: float,
    params: DriverParams,
    rng: np.random.Generator,
) -> float:
    """Steering-wheel angle command for the next tick.

    Reads the state ``delay`` seconds back (oldest available if the history
    is shorter) so the delay is exactly reproducible.
    """
    if not history:
        raise ValueError("driver needs at least one state in the history")
    delay_ticks = int(round(params.delay / dt))
    idx = max(0, len(history) - 1 - delay_ticks)
    s = history[idx]
    vy = s.v * math.sin(s.psi)
    noise = rng.normal(0.0, params.noise_sd)
    return params.kp * (params.target_y - s.y) - params.kd * vy + noise
