import math

import numpy as np
import pytest

from unisim.automaton import Bounds
from unisim.linearize import (
    AffineModel,
    BoundedHybridModel,
    assemble_bounded_model,
    fit_affine,
    grid,
    least_squares_plane,
    linearized_derivatives,
    plane,
)
from unisim.physics import State, derivatives, wheel_force_and_saddle_torque


def test_exact_affine_recovery():
    th, tq = grid((-0.7, 0.7), (-60.0, 60.0), 21)
    z = 1.5 - 2.25 * th + 0.125 * tq
    assert least_squares_plane(th, tq, z) == pytest.approx([1.5, -2.25, 0.125], abs=1e-12)


def test_sine_slope_matches_closed_forms():
    a = math.pi / 4
    th, tq = grid((-a, a), (-1.0, 1.0), 101)
    c = least_squares_plane(th, tq, np.sin(th))
    xs = np.linspace(-a, a, 101)
    discrete = np.sum(xs * np.sin(xs)) / np.sum(xs * xs)
    continuous = 3 * (math.sin(a) - a * math.cos(a)) / a**3
    assert c[1] == pytest.approx(discrete, rel=1e-12)
    # endpoint-inclusive grid approaches the continuum slope as it is refined
    assert c[1] == pytest.approx(continuous, rel=2e-3)
    fine = np.linspace(-a, a, 2001)
    assert abs(np.sum(fine * np.sin(fine)) / np.sum(fine * fine) - continuous) < abs(c[1] - continuous) / 10
    assert c[0] == pytest.approx(0.0, abs=1e-12) and c[2] == pytest.approx(0.0, abs=1e-12)


def test_degenerate_grid_rejected():
    x = np.zeros(10)
    with pytest.raises(np.linalg.LinAlgError):
        least_squares_plane(x, np.arange(10.0), np.arange(10.0))


def test_fit_is_least_squares_optimal(p):
    m = fit_affine(p, grid_n=41)
    th, tq = grid(m.theta_range, m.tau_range, 41)
    f2, _ = wheel_force_and_saddle_torque(th, tq, p)
    sse = np.sum((plane(m.f2_coeffs, th, tq) - f2) ** 2)
    rng = np.random.default_rng(0)
    for _ in range(20):
        c = np.array(m.f2_coeffs) + rng.normal(scale=[1e-3, 1e-3, 1e-5])
        assert np.sum((plane(c, th, tq) - f2) ** 2) > sse


def test_symmetric_window_has_no_offset(p):
    m = fit_affine(p)
    assert abs(m.f2_coeffs[0]) < 1e-9 and abs(m.tauS_coeffs[0]) < 1e-9


def test_smaller_window_fits_better(p):
    wide = fit_affine(p, (-math.pi / 4, math.pi / 4))
    narrow = fit_affine(p, (-0.2, 0.2))
    assert narrow.residual_max_tauS < wide.residual_max_tauS
    assert narrow.residual_max_f2 < wide.residual_max_f2


def test_residual_bounds_random_points(p):
    m = fit_affine(p, grid_n=201)
    rng = np.random.default_rng(1)
    th = rng.uniform(*m.theta_range, 2000)
    tq = rng.uniform(*m.tau_range, 2000)
    f2, ts = wheel_force_and_saddle_torque(th, tq, p)
    # off-grid points stay within a hair of the on-grid maximum
    assert np.max(np.abs(plane(m.f2_coeffs, th, tq) - f2)) <= 1.01 * m.residual_max_f2
    assert np.max(np.abs(plane(m.tauS_coeffs, th, tq) - ts)) <= 1.01 * m.residual_max_tauS


def test_linearized_derivatives(p):
    m = fit_affine(p, grid_n=41)
    s = State(0.0, 1.0, 0.01, 0.2)
    lin = linearized_derivatives(s, 0.0, m, p)
    full = derivatives(s, 0.0, p)
    assert lin.dx_W == full.dx_W and lin.dtheta == full.dtheta
    assert lin.dv_W == pytest.approx(plane(m.f2_coeffs, 0.01, 0.0) / 5.25, rel=1e-14)
    assert lin.domega == pytest.approx(plane(m.tauS_coeffs, 0.01, 0.0) / p.I_S, rel=1e-14)
    assert np.sign(lin.domega) == np.sign(full.domega)
    assert not lin.extrapolated
    assert linearized_derivatives(State(theta=1.0), 0.0, m, p).extrapolated


def test_fit_argument_checks(p):
    with pytest.raises(ValueError):
        fit_affine(p, (0.5, -0.5))
    with pytest.raises(ValueError):
        fit_affine(p, grid_n=2)


def test_affine_model_dict_round_trip(p):
    m = fit_affine(p, grid_n=21, bounds=Bounds(8.0, 12.0))
    assert AffineModel.from_dict(m.to_dict()) == m
    with pytest.raises(ValueError):
        AffineModel.from_dict({**m.to_dict(), "format_version": 99})


def test_bounded_model_structure(p):
    model = assemble_bounded_model(fit_affine(p, grid_n=21), p, initial_theta=0.1)
    assert [loc.name for loc in model.locations] == ["riding_normal", "riding_max", "riding_min", "fallen"]
    assert model.variables == ("v", "th", "om") and model.inputs == ("u",)
    assert len(model.transitions) == 4 + 3 * 6
    assert sum(t.target == "fallen" for t in model.transitions) == 18
    assert BoundedHybridModel.from_dict(model.to_dict()) == model
    sat = model.location("riding_max").flow["om"]
    assert "u" not in sat["coeffs"]
