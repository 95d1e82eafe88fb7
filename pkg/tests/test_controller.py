import pytest

from unisim.controller import (
    Observation,
    PidConfig,
    PidController,
    PidState,
    ZeroController,
    error_term,
    pid_step,
)


def test_error_term():
    assert error_term(Observation(v_W=1.0, theta=0.1, drive_intent=3.0), 0.05) == pytest.approx(0.2)


def test_first_step_has_no_derivative_kick():
    cfg = PidConfig(kp=2.0, ki=0.0, kd=100.0)
    st, u = pid_step(PidState(), Observation(theta=0.5), cfg, 0.01)
    assert u == pytest.approx(1.0)
    st, u = pid_step(st, Observation(theta=0.6), cfg, 0.01)
    assert u == pytest.approx(1.2 + 100.0 * 0.1 / 0.01)


def test_integral_is_clamped():
    cfg = PidConfig(kp=0.0, ki=1.0, kd=0.0, integral_limit=0.5)
    st = PidState()
    for _ in range(1000):
        st, u = pid_step(st, Observation(theta=1.0), cfg, 0.01)
    assert st.integral == 0.5 and u == 0.5


def test_controller_is_stateless_between_runs():
    ctl = PidController()
    a = ctl.step(ctl.initial_state(), Observation(theta=0.1), 0.001)
    b = ctl.step(ctl.initial_state(), Observation(theta=0.1), 0.001)
    assert a == b


def test_shipped_gains_oppose_a_lean():
    _, u = PidController().step(PidState(), Observation(theta=0.1), 0.001)
    assert u < 0


def test_zero_controller():
    assert ZeroController().step(None, Observation(theta=1.0), 0.001) == (None, 0.0)


def test_with_gains():
    assert PidController().with_gains(kp=1.0).config.kp == 1.0


@pytest.mark.parametrize("bad, field", [({"kp": float("nan")}, "kp"), ({"integral_limit": 0.0}, "integral_limit"),
                                        ({"intent_factor": -1.0}, "intent_factor")])
def test_config_validation(bad, field):
    with pytest.raises(ValueError, match=field):
        PidConfig(**bad).validate()


def test_rejects_bad_dt():
    with pytest.raises(ValueError):
        pid_step(PidState(), Observation(), PidConfig(), 0.0)
