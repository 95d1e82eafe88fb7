import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unisim.automaton import (
    Bounds,
    HybridConfiguration,
    MotorLocation,
    UnicycleLocation,
    apply_motor,
    check_fall,
    integrate_step,
    request_torque,
    step_configuration,
)
from unisim.physics import DEFAULT_PARAMS, ModelFault, State, breakdown

# One step from theta=0.1 under tau=10, dt=0.001 (50-digit reference).
ONE_STEP = (1.7235314350512803e-7, 0.00034470628701025605, 0.1000040956950154, 0.0081913900307933895)


@pytest.mark.parametrize(
    "req, tau, loc",
    [(0.0, 0.0, MotorLocation.NORMAL), (59.9, 59.9, MotorLocation.NORMAL),
     (60.0, 60.0, MotorLocation.NORMAL), (-60.0, -60.0, MotorLocation.NORMAL),
     (60.0000001, 60.0, MotorLocation.MAX), (-1e9, -60.0, MotorLocation.MIN)],
)
def test_motor_cap(p, req, tau, loc):
    assert apply_motor(req, p) == (tau, loc)


@pytest.mark.parametrize("req", [math.nan, math.inf, -math.inf])
def test_motor_rejects_non_finite(p, req):
    with pytest.raises(ModelFault):
        apply_motor(req, p)


@settings(max_examples=200, deadline=None)
@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_motor_cap_is_idempotent_monotone_lipschitz(a, b):
    p = DEFAULT_PARAMS
    ta, _ = apply_motor(a, p)
    tb, _ = apply_motor(b, p)
    assert apply_motor(ta, p)[0] == ta
    assert abs(ta) <= p.tau_max
    if a <= b:
        assert ta <= tb
    assert abs(ta - tb) <= abs(a - b)


def test_fall_guard():
    b = Bounds()
    assert check_fall(State(theta=math.pi / 2), b.omega_bound, b.v_bound) is UnicycleLocation.FALLEN
    assert check_fall(State(theta=-1.5707), b.omega_bound, b.v_bound) is UnicycleLocation.INITIAL
    assert check_fall(State(omega=10.01), b.omega_bound, b.v_bound) is UnicycleLocation.FALLEN
    assert check_fall(State(v_W=-15.01), b.omega_bound, b.v_bound) is UnicycleLocation.FALLEN
    assert check_fall(State(omega=10.0, v_W=15.0), b.omega_bound, b.v_bound) is UnicycleLocation.INITIAL


def test_integrate_step_reference(p):
    s = State(theta=0.1)
    new = integrate_step(s, breakdown(s, 10.0, p), 0.001, p)
    for got, want in zip(new.as_tuple(), ONE_STEP):
        assert got == pytest.approx(want, rel=1e-12)


def test_step_uses_applied_torque_not_request(p):
    c = request_torque(HybridConfiguration(state=State(theta=0.1)), 10.0, p)
    new = step_configuration(c, 0.001, p)
    assert new.state.theta == pytest.approx(ONE_STEP[2], rel=1e-12)
    capped = request_torque(HybridConfiguration(), 500.0, p)
    assert capped.tau_W_mot == 60.0 and capped.motor_loc is MotorLocation.MAX
    assert step_configuration(capped, 0.001, p).state == step_configuration(
        request_torque(HybridConfiguration(), 60.0, p), 0.001, p).state


def test_fall_clips_angle_and_is_absorbing(p):
    c = HybridConfiguration(state=State(theta=1.5707, omega=5.0))
    fallen = step_configuration(c, 0.001, p)
    assert fallen.fallen and fallen.state.theta == math.pi / 2
    assert step_configuration(fallen, 0.001, p) is fallen


def test_step_rejects_bad_dt(p):
    with pytest.raises(ValueError):
        step_configuration(HybridConfiguration(), 0.0, p)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-1e4, 1e4), min_size=1, max_size=400), st.floats(-0.5, 0.5))
def test_random_request_sequences_saturate_and_absorb(requests, theta0):
    p = DEFAULT_PARAMS
    c = HybridConfiguration(state=State(theta=theta0))
    frozen = None
    for req in requests:
        c = request_torque(c, req, p) if not c.fallen else c
        assert abs(c.tau_W_mot) <= p.tau_max
        c = step_configuration(c, 0.005, p)
        assert abs(c.tau_W_mot) <= p.tau_max
        if frozen is not None:
            assert c == frozen
        elif c.fallen:
            frozen = c
