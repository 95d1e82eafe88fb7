"""Discrete structure of the composed model: unicycle and motor locations.

Only the fixed composition unicycle || motor || user || controller is
modelled.  User and controller enter as plain values (``drive_intent`` and
``motor_torque``); the simulator in :mod:`unisim.simulation` drives them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

from .physics import ModelFault, Params, State, breakdown


class UnicycleLocation(str, enum.Enum):
    INITIAL = "initial"
    FALLEN = "fallen"


class MotorLocation(str, enum.Enum):
    NORMAL = "normal"
    MAX = "max"
    MIN = "min"


@dataclass(frozen=True)
class Bounds:
    """Artificial bounds past which the unicycle counts as fallen.

    Leaving either interval means the motor can no longer catch the rider,
    so treating it as a fall over-approximates the unsafe set.
    """

    omega_bound: float = 10.0
    v_bound: float = 15.0


@dataclass(frozen=True)
class HybridConfiguration:
    uni_loc: UnicycleLocation = UnicycleLocation.INITIAL
    motor_loc: MotorLocation = MotorLocation.NORMAL
    state: State = field(default_factory=State)
    motor_torque: float = 0.0      # controller request
    tau_W_mot: float = 0.0         # torque the motor actually applies
    drive_intent: float = 0.0

    @property
    def fallen(self) -> bool:
        return self.uni_loc is UnicycleLocation.FALLEN


def apply_motor(requested: float, p: Params) -> tuple[float, MotorLocation]:
    """Cap a torque request at +-tau_max.

    Exactly +-tau_max stays in ``NORMAL``; the motor location is recomputed
    from the request on every call, so there is no hysteresis.
    """
    if not math.isfinite(requested):
        raise ModelFault(f"non-finite motor torque request: {requested!r}")
    if requested > p.tau_max:
        return p.tau_max, MotorLocation.MAX
    if requested < -p.tau_max:
        return -p.tau_max, MotorLocation.MIN
    return float(requested), MotorLocation.NORMAL


def check_fall(s: State, omega_bound: float, v_bound: float) -> UnicycleLocation:
    if abs(s.theta) >= math.pi / 2 or abs(s.omega) > omega_bound or abs(s.v_W) > v_bound:
        return UnicycleLocation.FALLEN
    return UnicycleLocation.INITIAL


def request_torque(c: HybridConfiguration, requested: float, p: Params) -> HybridConfiguration:
    """New configuration after the controller sets ``motorTorque``."""
    tau, loc = apply_motor(requested, p)
    return replace(c, motor_torque=float(requested), tau_W_mot=tau, motor_loc=loc)


def integrate_step(s: State, fb, dt: float, p: Params) -> State:
    """Advance ``s`` by ``dt`` holding the forces in ``fb`` constant.

    This is the exact solution of the flows under constant acceleration.
    """
    a = fb.F_W2 / fb.m_W
    alpha = fb.tau_S / p.I_S
    half = 0.5 * dt * dt
    return State(
        x_W=s.x_W + s.v_W * dt + a * half,
        v_W=s.v_W + a * dt,
        theta=s.theta + s.omega * dt + alpha * half,
        omega=s.omega + alpha * dt,
    )


def step_configuration(
    c: HybridConfiguration, dt: float, p: Params, bounds: Bounds = Bounds()
) -> HybridConfiguration:
    """One discrete-time transition of the composed automaton.

    Integrates the flows for ``dt`` under the currently applied torque, then
    re-evaluates the motor cap and the fall guard.  On entering ``FALLEN``
    the state is kept (angle clipped to +-pi/2) and never changes again.
    """
    if c.fallen:
        return c
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    new = integrate_step(c.state, breakdown(c.state, c.tau_W_mot, p), dt, p)
    if not new.is_finite():
        raise ModelFault(f"non-finite state after step: {new}")
    tau, motor_loc = apply_motor(c.motor_torque, p)
    uni_loc = check_fall(new, bounds.omega_bound, bounds.v_bound)
    if uni_loc is UnicycleLocation.FALLEN:
        half_pi = math.pi / 2
        new = replace(new, theta=min(max(new.theta, -half_pi), half_pi))
    return replace(c, uni_loc=uni_loc, motor_loc=motor_loc, state=new, tau_W_mot=tau)
