import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lassim.feedback import (
    AssistTorque,
    GuidanceParams,
    TorqueParams,
    assist_torque,
    guidance_angle,
    lock_torque,
    net_repel,
    torque_from_risk,
)
from lassim.risk import RiskSample, risk_at
from lassim.scenario import ObstacleSpec, ScenarioSpec, straight_road
from lassim.vehicle import VehicleState

DEFAULTS = TorqueParams()


def _sample(r_left: float, r_right: float) -> RiskSample:
    return RiskSample(r_left=r_left, r_right=r_right, d_left=0.0, d_right=0.0)


def test_torque_curve_anchors():
    assert torque_from_risk(0.0, DEFAULTS) == 0.0
    assert torque_from_risk(1.0, DEFAULTS) == pytest.approx(2.0)
    assert torque_from_risk(0.5, DEFAULTS) == pytest.approx(1.0)


def test_torque_rejects_out_of_range_risk():
    with pytest.raises(ValueError):
        torque_from_risk(-0.01, DEFAULTS)
    with pytest.raises(ValueError):
        torque_from_risk(1.01, DEFAULTS)


@given(
    st.floats(min_value=0, max_value=1),
    st.floats(min_value=0, max_value=1),
    st.floats(min_value=0.1, max_value=10),
    st.floats(min_value=0.2, max_value=4),
)
def test_torque_monotone_in_risk(r1, r2, t_max, gamma):
    params = TorqueParams(t_max=t_max, gamma=gamma)
    lo, hi = sorted((r1, r2))
    assert torque_from_risk(lo, params) <= torque_from_risk(hi, params) + 1e-15


def test_net_repel_examples():
    assert net_repel(_sample(0.0, 0.5), DEFAULTS) == pytest.approx(1.0)
    assert net_repel(_sample(0.7, 0.7), DEFAULTS) == 0.0
    assert net_repel(_sample(1.0, 0.0), DEFAULTS) == pytest.approx(-2.0)


def test_net_repel_points_away_from_riskier_side():
    rng = np.random.Generator(np.random.PCG64(5))
    for _ in range(500):
        rl, rr = rng.uniform(0, 1, size=2)
        params = TorqueParams(t_max=float(rng.uniform(0.5, 4)), gamma=float(rng.uniform(0.3, 3)))
        t = net_repel(_sample(float(rl), float(rr)), params)
        if rr > rl:
            assert t > 0
        elif rl > rr:
            assert t < 0
        else:
            assert t == 0


def test_lock_spring_and_saturation():
    assert lock_torque(0.3, 0.3, DEFAULTS) == 0.0
    assert lock_torque(0.05, 0.0, DEFAULTS) == pytest.approx(-1.0)
    assert lock_torque(1.0, 0.0, DEFAULTS) == -2.0
    assert lock_torque(-1.0, 0.0, DEFAULTS) == 2.0


@given(
    st.floats(min_value=-10, max_value=10),
    st.floats(min_value=-10, max_value=10),
    st.floats(min_value=0, max_value=100),
    st.floats(min_value=0.1, max_value=5),
)
def test_lock_never_exceeds_saturation(theta, guidance, stiffness, saturation):
    params = TorqueParams(lock_stiffness=stiffness, lock_saturation=saturation)
    assert abs(lock_torque(theta, guidance, params)) <= saturation


def test_assist_total_is_sum():
    a = AssistTorque(repel=0.7, lock=-0.2)
    assert a.total == pytest.approx(0.5)


def _state(x: float, y: float, psi: float = 0.0) -> VehicleState:
    return VehicleState(x=x, y=y, psi=psi, v=25.0, theta=0.0, theta_dot=0.0)


def test_guidance_zero_at_lane_center():
    spec = straight_road()
    assert guidance_angle(spec, _state(50.0, -1.8), GuidanceParams()) == 0.0


def test_guidance_proportional_law():
    spec = straight_road()
    gp = GuidanceParams(kp=0.3, kd=0.0)
    # 0.5 m right of the (tie-broken) right-lane target
    angle = guidance_angle(spec, _state(50.0, -2.3), gp)
    assert angle == pytest.approx(0.15)


def test_guidance_switches_to_open_lane():
    spec = ScenarioSpec(
        road_length=500.0,
        obstacles=(ObstacleSpec(x_start=100.0, x_end=200.0, side="right", intrusion=2.4),),
        taper_length=20.0,
    )
    gp = GuidanceParams(kp=0.3, kd=0.0, preview=20.0)
    # preview station x=120 is inside the obstacle: right lane center is critical
    angle = guidance_angle(spec, _state(100.0, -1.8), gp)
    assert angle == pytest.approx(0.3 * (1.8 - (-1.8)))


def test_guidance_clamped():
    spec = straight_road()
    gp = GuidanceParams(kp=100.0, kd=0.0, max_wheel_angle=1.0)
    assert guidance_angle(spec, _state(50.0, -3.0), gp) == 1.0


def test_guidance_damps_lateral_speed():
    spec = straight_road()
    gp = GuidanceParams(kp=0.3, kd=0.2)
    moving = VehicleState(x=50.0, y=-1.8, psi=0.02, v=25.0, theta=0.0, theta_dot=0.0)
    assert guidance_angle(spec, moving, gp) == pytest.approx(-0.2 * 25.0 * math.sin(0.02))


def test_assist_torque_composition():
    spec = ScenarioSpec(
        road_length=500.0,
        obstacles=(ObstacleSpec(x_start=40.0, x_end=120.0, side="right", intrusion=2.4),),
        taper_length=20.0,
    )
    state = _state(80.0, -1.8)
    risk = risk_at(spec, state.x, state.y)
    a = assist_torque(spec, state, risk, DEFAULTS, GuidanceParams())
    assert a.repel == pytest.approx(net_repel(risk, DEFAULTS))
    assert a.total == pytest.approx(a.repel + a.lock)
    assert a.repel > 0  # pushed left, away from the right obstacle
    assert a.lock > 0   # guidance also pulls toward the open left lane
