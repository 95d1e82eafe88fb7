"""Fixed-step digital-time simulation loop.

Each iteration, in this order: advance time; compute the wheel force and
saddle torque; update the state assuming those stay constant for ``dt``;
build the controller's observation; evaluate the rider; evaluate the
controller; update the motor torque; log.  The torque chosen at step k is
therefore first felt at step k+1.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field, replace

from .automaton import (
    Bounds,
    HybridConfiguration,
    MotorLocation,
    UnicycleLocation,
    integrate_step,
    request_torque,
    step_configuration,
)
from .controller import Controller, Observation, PidController
from .intent import IntentProfile, intent_at
from .physics import ForceBreakdown, ModelFault, Params, State, breakdown

__all__ = ["SimConfig", "LogRecord", "SimulationFault", "run", "integrate_step"]

log = logging.getLogger(__name__)

MAX_STABLE_DT = 0.01


@dataclass(frozen=True)
class SimConfig:
    dt: float = 0.001
    duration: float = 30.0
    initial_state: State = field(default_factory=State)
    omega_bound: float = 10.0
    v_bound: float = 15.0
    slew_limit: float | None = None   # max |d request / dt| [N m / s]; None disables
    allow_large_dt: bool = False

    def problems(self) -> list[tuple[str, str]]:
        out = []
        if not (isinstance(self.dt, (int, float)) and math.isfinite(self.dt) and self.dt > 0):
            out.append(("dt", f"must be > 0, got {self.dt!r}"))
        elif self.dt > MAX_STABLE_DT and not self.allow_large_dt:
            out.append(("dt", f"must be <= {MAX_STABLE_DT} unless allow_large_dt is set, got {self.dt}"))
        if not (isinstance(self.duration, (int, float)) and math.isfinite(self.duration)):
            out.append(("duration", f"must be a finite number, got {self.duration!r}"))
        elif not out and self.duration < self.dt:
            out.append(("duration", f"must be >= dt, got {self.duration}"))
        for name in ("omega_bound", "v_bound"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and v > 0):
                out.append((name, f"must be > 0, got {v!r}"))
        if self.slew_limit is not None and not self.slew_limit > 0:
            out.append(("slew_limit", f"must be > 0 or null, got {self.slew_limit!r}"))
        if not self.initial_state.is_finite():
            out.append(("initial_state", "all fields must be finite"))
        elif abs(self.initial_state.theta) > math.pi / 2:
            out.append(("initial_state.theta", "must lie in [-pi/2, pi/2]"))
        return out

    def validate(self) -> "SimConfig":
        bad = self.problems()
        if bad:
            raise ValueError("; ".join(f"{k}: {m}" for k, m in bad))
        if self.dt > MAX_STABLE_DT:
            warnings.warn(f"dt={self.dt} exceeds {MAX_STABLE_DT}; results may be inaccurate", stacklevel=2)
        return self

    @property
    def steps(self) -> int:
        # guard against 30/0.001 = 29999.999...
        return int(math.floor(self.duration / self.dt + 1e-9))

    @property
    def bounds(self) -> Bounds:
        return Bounds(self.omega_bound, self.v_bound)


@dataclass(frozen=True)
class LogRecord:
    t: float
    state: State
    drive_intent: float
    request: float
    tau_W_mot: float
    uni_loc: UnicycleLocation
    motor_loc: MotorLocation
    forces: ForceBreakdown


class SimulationFault(ModelFault):
    """A run hit a non-finite value; ``records`` holds the log up to that point."""

    def __init__(self, message: str, records: list[LogRecord]):
        super().__init__(message)
        self.records = records


def _slew(previous: float, request: float, limit: float | None, dt: float) -> float:
    if limit is None:
        return request
    step = limit * dt
    return min(max(request, previous - step), previous + step)


def run(
    sim: SimConfig,
    p: Params,
    profile: IntentProfile,
    controller: Controller | None = None,
) -> list[LogRecord]:
    """Simulate until ``sim.duration`` or the first fall, one record per step.

    Each record's force breakdown is evaluated at that record's state and
    applied torque, i.e. it is the force set used by the following step.
    """
    sim.validate()
    if controller is None:
        controller = PidController()
    dt, bounds = sim.dt, sim.bounds
    c = HybridConfiguration(state=sim.initial_state, drive_intent=intent_at(profile, 0.0))
    ctl_state = controller.initial_state()
    records: list[LogRecord] = []
    for k in range(1, sim.steps + 1):
        t = k * dt
        try:
            c = step_configuration(c, dt, p, bounds)
            if not c.fallen:
                intent = intent_at(profile, t)
                obs = Observation(c.state.v_W, c.state.theta, c.state.omega, intent, t)
                ctl_state, req = controller.step(ctl_state, obs, dt)
                req = _slew(c.motor_torque, req, sim.slew_limit, dt)
                c = request_torque(replace(c, drive_intent=intent), req, p)
            fb = breakdown(c.state, c.tau_W_mot, p)
        except ModelFault as exc:
            raise SimulationFault(f"model fault at t={t:.6g}: {exc}", records) from exc
        records.append(
            LogRecord(t, c.state, c.drive_intent, c.motor_torque, c.tau_W_mot, c.uni_loc, c.motor_loc, fb)
        )
        if c.fallen:
            log.info("fallen at t=%.6g after %d of %d steps", t, k, sim.steps)
            break
    return records
