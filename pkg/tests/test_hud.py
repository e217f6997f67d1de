import numpy as np
import pytest

from lassim.hud import (
    band_delta,
    hud_state,
    hud_to_dict,
    make_anticipation_question,
    question_to_dict,
    semantically_distinct,
    zone_of,
)
from lassim.risk import RiskSample, risk_at
from lassim.scenario import ObstacleSpec, ScenarioSpec, straight_road
from lassim.vehicle import VehicleState


def _risk(r_left: float, r_right: float) -> RiskSample:
    return RiskSample(r_left=r_left, r_right=r_right, d_left=0.0, d_right=0.0)


def _state(x: float, y: float) -> VehicleState:
    return VehicleState(x=x, y=y, psi=0.0, v=25.0, theta=0.0, theta_dot=0.0)


def test_zone_taxonomy():
    z = zone_of(_risk(0.0, 0.0))
    assert (z.kind, z.side, z.level) == ("safe", "none", 0.0)
    z = zone_of(_risk(0.0, 0.4))
    assert (z.kind, z.side, z.level) == ("caution", "right", 0.4)
    z = zone_of(_risk(1.0, 0.0))
    assert (z.kind, z.side, z.level) == ("critical", "left", 1.0)
    z = zone_of(_risk(0.3, 0.6))
    assert (z.kind, z.side) == ("caution", "both")


def test_hud_state_centered_safe():
    spec = straight_road()
    h = hud_state(spec, _state(100.0, 0.0), enabled=True)
    assert h.enabled and len(h.stations) == 16
    assert h.marker_zone.kind == "safe"
    assert h.stations[0].x_ahead == 0.0
    assert h.stations[0].band.left_critical == pytest.approx(3.6)
    assert h.stations[0].band.left_caution == pytest.approx(2.1)
    assert h.stations[-1].x_ahead == pytest.approx(50.0)


def test_hud_disabled_has_no_bands():
    spec = straight_road()
    h = hud_state(spec, _state(100.0, 0.0), enabled=False)
    assert not h.enabled
    assert h.stations == ()
    # marker fields still populated for telemetry
    assert h.marker_zone.kind == "safe"


def test_hud_marker_caution_left():
    spec = straight_road()
    h = hud_state(spec, _state(100.0, 2.85), enabled=True)
    assert h.marker_zone.kind == "caution"
    assert h.marker_zone.side == "left"
    assert h.marker_zone.level == pytest.approx(0.5)


def test_marker_zone_consistent_with_risk():
    rng = np.random.Generator(np.random.PCG64(11))
    spec = ScenarioSpec(
        road_length=600.0,
        obstacles=(
            ObstacleSpec(x_start=100.0, x_end=180.0, side="right", intrusion=2.0),
            ObstacleSpec(x_start=300.0, x_end=420.0, side="left", intrusion=2.5),
        ),
        taper_length=25.0,
    )
    for _ in range(300):
        x = float(rng.uniform(0.0, 540.0))
        y = float(rng.uniform(-4.5, 4.5))
        h = hud_state(spec, _state(x, y), enabled=True)
        assert h.marker_zone == zone_of(risk_at(spec, x, y))


OBSTACLE_SPEC = ScenarioSpec(
    road_length=800.0,
    obstacles=(ObstacleSpec(x_start=200.0, x_end=300.0, side="right", intrusion=2.0),),
    taper_length=40.0,
)


def test_question_correct_option_is_true_hud_frame():
    rng = np.random.Generator(np.random.PCG64(1))
    frozen = _state(180.0, 1.8)
    q = make_anticipation_question(OBSTACLE_SPEC, frozen, rng)
    assert q.options[q.correct_index] == q.correct
    assert q.correct == hud_state(OBSTACLE_SPEC, frozen, enabled=True)


def test_question_options_pairwise_distinct():
    rng = np.random.Generator(np.random.PCG64(2))
    for i in range(50):
        frozen = _state(float(rng.uniform(0.0, 700.0)), float(rng.uniform(-3.0, 3.0)))
        q = make_anticipation_question(OBSTACLE_SPEC, frozen, rng)
        opts = q.options
        assert len(opts) == 4
        for a in range(4):
            for b in range(a + 1, 4):
                assert semantically_distinct(opts[a], opts[b])


def test_question_distractors_differ_from_correct_per_taxonomy():
    rng = np.random.Generator(np.random.PCG64(3))
    frozen = _state(220.0, -0.5)
    q = make_anticipation_question(OBSTACLE_SPEC, frozen, rng)
    for d in q.distractors:
        assert (
            d.marker_zone.kind != q.correct.marker_zone.kind
            or d.marker_zone.side != q.correct.marker_zone.side
            or band_delta(d, q.correct) > 0.2
        )


def test_question_reproducible_from_seed():
    frozen = _state(150.0, 1.0)
    a = make_anticipation_question(OBSTACLE_SPEC, frozen, np.random.Generator(np.random.PCG64(77)))
    b = make_anticipation_question(OBSTACLE_SPEC, frozen, np.random.Generator(np.random.PCG64(77)))
    assert a == b
    c = make_anticipation_question(OBSTACLE_SPEC, frozen, np.random.Generator(np.random.PCG64(78)))
    assert c != a  # different stream, different shuffle/mutations


def test_correct_answer_structure_for_right_obstacle_scene():
    # car in the left lane, obstruction ahead on the right: the true option
    # keeps the marker safe while the bands narrow from the right
    rng = np.random.Generator(np.random.PCG64(4))
    frozen = _state(190.0, 1.8)
    q = make_anticipation_question(OBSTACLE_SPEC, frozen, rng)
    correct = q.options[q.correct_index]
    assert correct.marker_zone.kind == "safe"
    base_right = -OBSTACLE_SPEC.width / 2
    assert any(st.band.right_critical > base_right + 0.5 for st in correct.stations)


def test_hud_serialization_shape():
    h = hud_state(straight_road(), _state(10.0, 0.3), enabled=True)
    d = hud_to_dict(h)
    assert d["enabled"] is True
    assert len(d["stations"]) == 16
    assert set(d["stations"][0]) == {
        "x_ahead", "left_critical", "right_critical", "left_caution", "right_caution"
    }
    assert d["zone"]["kind"] == "safe"


def test_question_serialization_shape():
    rng = np.random.Generator(np.random.PCG64(5))
    q = make_anticipation_question(OBSTACLE_SPEC, _state(100.0, -1.0), rng)
    d = question_to_dict(q)
    assert len(d["options"]) == 4
    assert 0 <= d["correct_index"] <= 3
    assert d["scenario"]["road_length"] == 800.0
    assert d["frozen"]["x"] == 100.0
