"""Spatial risk field around the corridor boundaries.

Risk is 0 at the caution boundary, 1 at the critical boundary, linear in
between, and saturates at 1 beyond the critical boundary.  Left and right
sides are evaluated independently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scenario import Corridor, ScenarioSpec, corridor_at


@dataclass(frozen=True)
class RiskSample:
    """Risk and signed critical-boundary distances at one (x, y) position.

    Distances are positive inside the safe region, zero on the critical
    boundary, negative beyond it.
    """

    r_left: float
    r_right: float
    d_left: float
    d_right: float

    @property
    def level(self) -> float:
        return max(self.r_left, self.r_right)


@dataclass(frozen=True)
class RiskStation:
    x: float
    corridor: Corridor
    risk_at_marker: RiskSample


@dataclass(frozen=True)
class RiskProfile:
    stations: tuple[RiskStation, ...]
    lookahead: float
    sample_count: int


def risk_from_distance(d: float, p: float) -> float:
    """Linear risk ramp: clamp(1 - d/p, 0, 1) for caution padding p."""
    if p <= 0:
        raise ValueError(f"caution padding must be > 0, got {p}")
    r = 1.0 - d / p
    if r < 0.0:
        return 0.0
    if r > 1.0:
        return 1.0
    return r


def risk_at(spec: ScenarioSpec, x: float, y: float) -> RiskSample:
    """Evaluate both side risks at a position on the road."""
    c = corridor_at(spec, x)
    return risk_in_corridor(c, y, spec.caution_padding)


def risk_in_corridor(corridor: Corridor, y: float, padding: float) -> RiskSample:
    d_left = corridor.left_critical - y
    d_right = y - corridor.right_critical
    return RiskSample(
        r_left=risk_from_distance(d_left, padding),
        r_right=risk_from_distance(d_right, padding),
        d_left=d_left,
        d_right=d_right,
    )


def risk_profile(
    spec: ScenarioSpec, state_x: float, state_y: float, lookahead: float, n: int
) -> RiskProfile:
    """Sample the corridor ahead at n evenly spaced stations.

    Each station reports the risk the current lateral position would incur
    there, which is what the HUD bands and marker projection are built from.
    """
    if n < 2:
        raise ValueError(f"sample count must be >= 2, got {n}")
    if lookahead <= 0:
        raise ValueError(f"lookahead must be > 0, got {lookahead}")
    x_end = min(state_x + lookahead, spec.road_length)
    if not x_end > state_x:
        raise ValueError(f"no road ahead of x={state_x} to profile")
    span = x_end - state_x
    stations = []
    for i in range(n):
        x = state_x + span * i / (n - 1)
        c = corridor_at(spec, x)
        stations.append(
            RiskStation(x=x, corridor=c, risk_at_marker=risk_in_corridor(c, state_y, spec.caution_padding))
        )
    return RiskProfile(stations=tuple(stations), lookahead=lookahead, sample_count=n)
