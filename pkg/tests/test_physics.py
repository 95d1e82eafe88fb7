import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unisim.physics import (
    BETA_CONSTRAINT,
    DEFAULT_PARAMS,
    FORCE_FIELDS,
    Params,
    State,
    breakdown,
    derivatives,
    gravity_terms,
    split_ratio,
    wheel_force_and_saddle_torque,
)

# Reference values from a 50-digit mpmath evaluation at theta=0.1, tau=10.
ORACLE_PRINTED = {
    "m_W": 5.25,
    "F_W_mot": 33.333333333333333,
    "tau_S_g": 62.679412307544587,
    "F_W_g": 77.957845403982021,
    "F_W": 111.29117873731535,
    "beta": 60.496759874466475,
    "F_W1": 109.48147073051151,
    "F_W2": 1.8097080068038443,
    "tau_S_W": 87.147615518098572,
    "tau_S": 139.82702782564316,
}
ORACLE_PRINTED_DV = 0.34470628701025605
ORACLE_PRINTED_DOMEGA = 8.1913900307933895

ORACLE_CONSTRAINT = {
    "beta": 3.8387753908526703,
    "F_W1": 88.29131415428414,
    "F_W2": 22.999864583031215,
    "tau_S_W": 70.280180273106745,
    "tau_S": 122.95959258065133,
}
ORACLE_CONSTRAINT_DV = 4.3809265872440409
ORACLE_CONSTRAINT_DOMEGA = 7.2032567416901776

finite = st.floats(-1e3, 1e3, allow_nan=False)
angles = st.floats(-math.pi / 2, math.pi / 2, allow_nan=False)


def test_breakdown_matches_high_precision_reference(p):
    fb = breakdown(State(theta=0.1), 10.0, p)
    for name, want in ORACLE_PRINTED.items():
        assert getattr(fb, name) == pytest.approx(want, rel=1e-13, abs=1e-13), name
    d = derivatives(State(theta=0.1), 10.0, p)
    assert d.dv_W == pytest.approx(ORACLE_PRINTED_DV, rel=1e-13)
    assert d.domega == pytest.approx(ORACLE_PRINTED_DOMEGA, rel=1e-13)


def test_constraint_split_matches_reference(p):
    q = p.with_(beta_model=BETA_CONSTRAINT)
    fb = breakdown(State(theta=0.1), 10.0, q)
    for name, want in ORACLE_CONSTRAINT.items():
        assert getattr(fb, name) == pytest.approx(want, rel=1e-13), name
    d = derivatives(State(theta=0.1), 10.0, q)
    assert d.dv_W == pytest.approx(ORACLE_CONSTRAINT_DV, rel=1e-13)
    assert d.domega == pytest.approx(ORACLE_CONSTRAINT_DOMEGA, rel=1e-13)


def test_gravity_terms_reference(p):
    tau_g, f_g = gravity_terms(0.2, p)
    assert tau_g == pytest.approx(124.73255264637123, rel=1e-13)
    assert f_g == pytest.approx(152.80775752191445, rel=1e-13)


def test_rest_is_exact_fixed_point(p):
    d = derivatives(State(), 0.0, p)
    assert d.as_tuple() == (0.0, 0.0, 0.0, 0.0)
    assert all(getattr(breakdown(State(), 0.0, p), f) == 0.0 for f in FORCE_FIELDS if f not in ("m_W", "beta"))


def test_printed_ratio_extremes(p):
    assert split_ratio(0.0, p) == pytest.approx(4 * 80 / 5.25)
    assert split_ratio(math.pi / 2, p) == pytest.approx(80 / 5.25)


def test_motor_torque_pushes_saddle_clockwise_and_wheel_forward(p):
    fb = breakdown(State(), 10.0, p)
    assert fb.F_W_mot > 0 and fb.F_W2 > 0
    # the reaction is beaten by the wheel push transmitted up the rod
    assert fb.tau_S > 0


def test_leaning_alone_accelerates_the_lean(p):
    for th in (0.05, 0.3, 1.0):
        assert derivatives(State(theta=th), 0.0, p).domega > 0
        assert derivatives(State(theta=-th), 0.0, p).domega < 0


def test_default_limit_cannot_recover_from_a_tenth_of_a_radian(p):
    # every admissible torque still accelerates the lean at theta = 0.1
    taus = np.linspace(-p.tau_max, p.tau_max, 2001)
    _, tau_s = wheel_force_and_saddle_torque(np.full_like(taus, 0.1), taus, p)
    assert np.all(tau_s > 0)
    # a larger motor can
    _, tau_s_big = wheel_force_and_saddle_torque(0.1, -150.0, p)
    assert tau_s_big < 0


def test_vectorised_matches_scalar(p):
    th = np.linspace(-1.2, 1.2, 7)
    tq = np.linspace(-60, 60, 7)
    f2, ts = wheel_force_and_saddle_torque(th, tq, p)
    for i in range(7):
        fb = breakdown(State(theta=float(th[i])), float(tq[i]), p)
        assert f2[i] == fb.F_W2 and ts[i] == fb.tau_S


def test_grid_is_finite(p):
    th, tq = np.meshgrid(np.linspace(-math.pi / 2, math.pi / 2, 201), np.linspace(-p.tau_max, p.tau_max, 201))
    for q in (p, p.with_(beta_model=BETA_CONSTRAINT)):
        f2, ts = wheel_force_and_saddle_torque(th, tq, q)
        assert np.all(np.isfinite(f2)) and np.all(np.isfinite(ts))


def test_pure_function(p):
    s = State(1.0, 2.0, 0.3, -0.4)
    assert breakdown(s, 5.0, p) == breakdown(s, 5.0, p)
    assert s == State(1.0, 2.0, 0.3, -0.4)


def test_wheel_position_does_not_enter(p):
    a = derivatives(State(x_W=0.0, v_W=1.0, theta=0.2, omega=0.3), 7.0, p)
    b = derivatives(State(x_W=123.0, v_W=1.0, theta=0.2, omega=0.3), 7.0, p)
    assert a == b


@settings(max_examples=300, deadline=None)
@given(angles, finite, st.sampled_from(["printed", "constraint"]))
def test_split_identity(theta, tau, model):
    q = DEFAULT_PARAMS.with_(beta_model=model)
    fb = breakdown(State(theta=theta), tau, q)
    scale = max(abs(fb.F_W), 1.0)
    assert abs(fb.F_W1 + fb.F_W2 - fb.F_W) <= 1e-12 * scale
    assert abs(fb.F_W1 - fb.beta * fb.F_W2) <= 1e-12 * scale


@settings(max_examples=300, deadline=None)
@given(finite, angles, finite, finite)
def test_mirror_symmetry(v, theta, omega, tau):
    s = State(0.0, v, theta, omega)
    a = derivatives(s, tau, DEFAULT_PARAMS).as_tuple()
    b = derivatives(s.mirrored(), -tau, DEFAULT_PARAMS).as_tuple()
    for x, y in zip(a, b):
        assert abs(x + y) <= 1e-12 * max(abs(x), 1.0)


def test_heavy_wheel_limit_is_a_pendulum(p):
    # with a near-immovable wheel the saddle swings like a rigid pendulum on its pivot
    q = p.with_(m_W_real=p.m_W_real * 1e6)
    for th in (0.05, 0.4, 1.2):
        d = derivatives(State(theta=th), 0.0, q)
        assert d.domega == pytest.approx(q.m_S * q.g * math.sin(th) * q.r_com / q.I_S, rel=1e-3)
        fb = breakdown(State(theta=th), 0.0, q)
        assert fb.F_W1 / fb.F_W < 1e-4


@pytest.mark.parametrize(
    "change, field",
    [({"r_W": 0.0}, "r_W"), ({"xi": 1.2}, "xi"), ({"I_S": -1.0}, "I_S"), ({"r_com": 2.0}, "r_com"),
     ({"beta_model": "other"}, "beta_model"), ({"m_S": math.nan}, "m_S")],
)
def test_params_validation_names_the_field(change, field):
    bad = DEFAULT_PARAMS.with_(**change)
    assert field in [k for k, _ in bad.problems()]
    with pytest.raises(ValueError, match=field):
        bad.validate()


def test_params_dict_round_trip():
    assert Params.from_dict(DEFAULT_PARAMS.to_dict()) == DEFAULT_PARAMS
    with pytest.raises(ValueError, match="unknown"):
        Params.from_dict({**DEFAULT_PARAMS.to_dict(), "mass": 1.0})
