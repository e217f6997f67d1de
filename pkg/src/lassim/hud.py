"""Semantic HUD frames and the anticipation quiz generator.

A HUD frame is the rendering-independent content of the display: corridor
bands ahead, the vehicle marker, and the marker's zone classification.
Keeping this separate from pixels makes the no-HUD study condition and the
freeze-frame anticipation task testable headlessly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .risk import RiskSample, risk_at, risk_in_corridor, risk_profile
from .scenario import Corridor, ScenarioSpec, corridor_at, scenario_to_dict
from .vehicle import VehicleState

DEFAULT_LOOKAHEAD = 50.0  # m of road shown ahead
DEFAULT_STATIONS = 16

SAFE = "safe"
CAUTION = "caution"
CRITICAL = "critical"

GEOMETRY_TOLERANCE = 0.2  # m; band differences below this are "the same picture"
MIN_BAND_SHIFT = 0.5      # m; geometry distractors shift at least this much
_MAX_ATTEMPTS = 64


class QuestionGenerationError(RuntimeError):
    """Could not build four distinct options for this freeze-frame."""


@dataclass(frozen=True)
class ZoneClass:
    kind: str   # safe | caution | critical
    side: str   # none | left | right | both
    level: float


@dataclass(frozen=True)
class HudStation:
    x_ahead: float
    band: Corridor


@dataclass(frozen=True)
class HudState:
    stations: tuple[HudStation, ...]
    marker_y: float
    marker_zone: ZoneClass
    r_left: float
    r_right: float
    enabled: bool


def zone_of(risk: RiskSample) -> ZoneClass:
    """Classify a risk sample into the display zone taxonomy."""
    level = max(risk.r_left, risk.r_right)
    if level == 0.0:
        return ZoneClass(kind=SAFE, side="none", level=0.0)
    if risk.r_left > 0.0 and risk.r_right > 0.0:
        side = "both"
    elif risk.r_left > 0.0:
        side = "left"
    else:
        side = "right"
    kind = CRITICAL if level >= 1.0 else CAUTION
    return ZoneClass(kind=kind, side=side, level=level)


def hud_state(
    spec: ScenarioSpec,
    state: VehicleState,
    enabled: bool,
    lookahead: float = DEFAULT_LOOKAHEAD,
    n: int = DEFAULT_STATIONS,
) -> HudState:
    """Build the HUD frame for a vehicle state.

    Disabled frames (the no-HUD study condition) carry no band data but keep
    the marker fields, which also feed telemetry.
    """
    sample = risk_at(spec, state.x, state.y)
    stations: tuple[HudStation, ...] = ()
    if enabled:
        profile = risk_profile(spec, state.x, state.y, lookahead, n)
        stations = tuple(
            HudStation(x_ahead=st.x - state.x, band=st.corridor) for st in profile.stations
        )
    return HudState(
        stations=stations,
        marker_y=state.y,
        marker_zone=zone_of(sample),
        r_left=sample.r_left,
        r_right=sample.r_right,
        enabled=enabled,
    )


# --- anticipation quiz ----------------------------------------------------


@dataclass(frozen=True)
class AnticipationQuestion:
    scenario: ScenarioSpec
    frozen: VehicleState
    correct: HudState
    distractors: tuple[HudState, HudState, HudState]
    correct_index: int

    @property
    def options(self) -> tuple[HudState, ...]:
        """The four options in display order."""
        opts = list(self.distractors)
        opts.insert(self.correct_index, self.correct)
        return tuple(opts)


def band_delta(a: HudState, b: HudState) -> float:
    """Largest boundary difference between two frames' bands."""
    if len(a.stations) != len(b.stations):
        return float("inf")
    worst = 0.0
    for sa, sb in zip(a.stations, b.stations):
        for fa, fb in (
            (sa.band.left_critical, sb.band.left_critical),
            (sa.band.right_critical, sb.band.right_critical),
            (sa.band.left_caution, sb.band.left_caution),
            (sa.band.right_caution, sb.band.right_caution),
        ):
            worst = max(worst, abs(fa - fb))
    return worst


def semantically_distinct(a: HudState, b: HudState) -> bool:
    """Would a participant see these as different answers?"""
    if a.marker_zone.kind != b.marker_zone.kind:
        return True
    if a.marker_zone.side != b.marker_zone.side:
        return True
    return band_delta(a, b) > GEOMETRY_TOLERANCE


def _marker_variant(base: HudState, spec: ScenarioSpec, x: float, y: float) -> HudState:
    sample = risk_at(spec, x, y)
    return HudState(
        stations=base.stations,
        marker_y=y,
        marker_zone=zone_of(sample),
        r_left=sample.r_left,
        r_right=sample.r_right,
        enabled=True,
    )


def _place_marker(kind: str, c: Corridor, padding: float, rng: np.random.Generator) -> float | None:
    """A lateral position whose zone kind is (usually) the requested one."""
    if kind == SAFE:
        lo, hi = c.right_caution, c.left_caution
        if hi - lo <= 1e-9:
            return None  # corridor too narrow for a safe position
        return 0.5 * (lo + hi)
    side = "left" if rng.random() < 0.5 else "right"
    if kind == CAUTION:
        level = rng.uniform(0.25, 0.75)
        if side == "left":
            return c.left_critical - (1.0 - level) * padding
        return c.right_critical + (1.0 - level) * padding
    # critical: at or beyond the boundary
    overshoot = rng.uniform(0.0, 0.5)
    if side == "left":
        return c.left_critical + overshoot
    return c.right_critical - overshoot


def _mutate_kind(
    correct: HudState, spec: ScenarioSpec, frozen: VehicleState, rng: np.random.Generator
) -> HudState | None:
    c = corridor_at(spec, frozen.x)
    kinds = [k for k in (SAFE, CAUTION, CRITICAL) if k != correct.marker_zone.kind]
    order = rng.permutation(len(kinds))
    for i in order:
        y = _place_marker(kinds[int(i)], c, spec.caution_padding, rng)
        if y is None:
            continue
        cand = _marker_variant(correct, spec, frozen.x, y)
        if cand.marker_zone.kind != correct.marker_zone.kind:
            return cand
    return None


def _mirror_corridor(c: Corridor) -> Corridor:
    return Corridor(
        left_critical=-c.right_critical,
        right_critical=-c.left_critical,
        left_caution=-c.right_caution,
        right_caution=-c.left_caution,
    )


def _mirror_side(side: str) -> str:
    return {"left": "right", "right": "left"}.get(side, side)


def _mutate_side(
    correct: HudState, spec: ScenarioSpec, frozen: VehicleState, rng: np.random.Generator
) -> HudState | None:
    mirrored = HudState(
        stations=tuple(
            HudStation(x_ahead=st.x_ahead, band=_mirror_corridor(st.band))
            for st in correct.stations
        ),
        marker_y=-correct.marker_y,
        marker_zone=ZoneClass(
            kind=correct.marker_zone.kind,
            side=_mirror_side(correct.marker_zone.side),
            level=correct.marker_zone.level,
        ),
        r_left=correct.r_right,
        r_right=correct.r_left,
        enabled=True,
    )
    if semantically_distinct(mirrored, correct):
        return mirrored
    # The scene is symmetric; fall back to a marker variant on a fresh draw.
    c = corridor_at(spec, frozen.x)
    for _ in range(8):
        kind = (SAFE, CAUTION, CRITICAL)[int(rng.integers(3))]
        y = _place_marker(kind, c, spec.caution_padding, rng)
        if y is None:
            continue
        cand = _marker_variant(correct, spec, frozen.x, y)
        if semantically_distinct(cand, correct):
            return cand
    return None


def _mutate_geometry(
    correct: HudState, spec: ScenarioSpec, rng: np.random.Generator
) -> HudState:
    shift = rng.uniform(MIN_BAND_SHIFT, 3.0 * MIN_BAND_SHIFT)
    if rng.random() < 0.5:
        shift = -shift
    stations = tuple(
        HudStation(
            x_ahead=st.x_ahead,
            band=Corridor(
                left_critical=st.band.left_critical + shift,
                right_critical=st.band.right_critical + shift,
                left_caution=st.band.left_caution + shift,
                right_caution=st.band.right_caution + shift,
            ),
        )
        for st in correct.stations
    )
    sample = risk_in_corridor(stations[0].band, correct.marker_y, spec.caution_padding)
    return HudState(
        stations=stations,
        marker_y=correct.marker_y,
        marker_zone=zone_of(sample),
        r_left=sample.r_left,
        r_right=sample.r_right,
        enabled=True,
    )


def make_anticipation_question(
    spec: ScenarioSpec,
    frozen: VehicleState,
    rng: np.random.Generator,
    lookahead: float = DEFAULT_LOOKAHEAD,
    n: int = DEFAULT_STATIONS,
) -> AnticipationQuestion:
    """Build a four-option freeze-frame question.

    One option is the true HUD frame for the frozen state; the other three
    mutate the zone kind, the risk side, or the band geometry.  All four are
    pairwise distinct under the semantic comparison, and the option order is
    shuffled by the provided stream.
    """
    correct = hud_state(spec, frozen, enabled=True, lookahead=lookahead, n=n)
    for _ in range(_MAX_ATTEMPTS):
        d_kind = _mutate_kind(correct, spec, frozen, rng)
        d_side = _mutate_side(correct, spec, frozen, rng)
        d_geom = _mutate_geometry(correct, spec, rng)
        if d_kind is None or d_side is None:
            continue
        opts = [correct, d_kind, d_side, d_geom]
        if all(
            semantically_distinct(opts[i], opts[j])
            for i in range(4)
            for j in range(i + 1, 4)
        ):
            perm = [int(i) for i in rng.permutation(4)]
            shuffled = [opts[i] for i in perm]
            correct_index = perm.index(0)
            distractors = tuple(o for o in shuffled if o is not correct)
            return AnticipationQuestion(
                scenario=spec,
                frozen=frozen,
                correct=correct,
                distractors=distractors,  # type: ignore[arg-type]
                correct_index=correct_index,
            )
    raise QuestionGenerationError(
        f"no distinct option set for frozen state at x={frozen.x:.1f}, y={frozen.y:.2f}"
    )


# --- serialization --------------------------------------------------------


def zone_to_dict(zone: ZoneClass) -> dict:
    return {"kind": zone.kind, "side": zone.side, "level": zone.level}


def hud_to_dict(hud: HudState) -> dict:
    return {
        "enabled": hud.enabled,
        "stations": [
            {
                "x_ahead": st.x_ahead,
                "left_critical": st.band.left_critical,
                "right_critical": st.band.right_critical,
                "left_caution": st.band.left_caution,
                "right_caution": st.band.right_caution,
            }
            for st in hud.stations
        ],
        "marker_y": hud.marker_y,
        "zone": zone_to_dict(hud.marker_zone),
        "r_left": hud.r_left,
        "r_right": hud.r_right,
    }


def question_to_dict(q: AnticipationQuestion) -> dict:
    return {
        "scenario": scenario_to_dict(q.scenario),
        "frozen": {
            "x": q.frozen.x,
            "y": q.frozen.y,
            "psi": q.frozen.psi,
            "v": q.frozen.v,
            "theta": q.frozen.theta,
            "theta_dot": q.frozen.theta_dot,
        },
        "options": [hud_to_dict(o) for o in q.options],
        "correct_index": q.correct_index,
    }
