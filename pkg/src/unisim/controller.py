"""Controllers map an :class:`Observation` to a motor torque request.

A controller is any object with ``initial_state()`` and
``step(state, obs, dt) -> (state, request)``.  Controller memory is threaded
through explicitly so independent runs never share anything mutable.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace
from typing import Any, Protocol


@dataclass(frozen=True)
class Observation:
    """What the controller sees.  The wheel position is deliberately absent."""

    v_W: float = 0.0
    theta: float = 0.0
    omega: float = 0.0
    drive_intent: float = 0.0
    t: float = 0.0


class Controller(Protocol):
    def initial_state(self) -> Any: ...

    def step(self, state: Any, obs: Observation, dt: float) -> tuple[Any, float]: ...


@dataclass(frozen=True)
class PidConfig:
    """Gains for the weighted-error PID.

    With the shipped physics a positive motor torque *increases* the lean
    rate, so stabilising gains are negative.
    """

    kp: float = -2500.0
    ki: float = -1500.0
    kd: float = -400.0
    intent_factor: float = 0.05    # s/m
    integral_limit: float = 1.0

    def problems(self) -> list[tuple[str, str]]:
        out = []
        for name in ("kp", "ki", "kd", "intent_factor", "integral_limit"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
                out.append((name, f"must be a finite number, got {value!r}"))
        if not out:
            if self.intent_factor < 0:
                out.append(("intent_factor", f"must be >= 0, got {self.intent_factor}"))
            if self.integral_limit <= 0:
                out.append(("integral_limit", f"must be > 0, got {self.integral_limit}"))
        return out

    def validate(self) -> "PidConfig":
        bad = self.problems()
        if bad:
            raise ValueError("; ".join(f"{k}: {m}" for k, m in bad))
        return self

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PidState:
    integral: float = 0.0
    prev_error: float = 0.0
    initialized: bool = False


def error_term(o: Observation, intent_factor: float) -> float:
    """Lean angle plus weighted speed shortfall."""
    return o.theta + (o.drive_intent - o.v_W) * intent_factor


def pid_step(ps: PidState, o: Observation, cfg: PidConfig, dt: float) -> tuple[PidState, float]:
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    e = error_term(o, cfg.intent_factor)
    lim = cfg.integral_limit
    integral = min(max(ps.integral + e * dt, -lim), lim)
    derivative = (e - ps.prev_error) / dt if ps.initialized else 0.0
    request = cfg.kp * e + cfg.ki * integral + cfg.kd * derivative
    return PidState(integral, e, True), request


def zero_controller(o: Observation) -> float:
    return 0.0


@dataclass(frozen=True)
class PidController:
    config: PidConfig = PidConfig()

    def initial_state(self) -> PidState:
        return PidState()

    def step(self, state: PidState, obs: Observation, dt: float) -> tuple[PidState, float]:
        return pid_step(state, obs, self.config, dt)

    def with_gains(self, **gains) -> "PidController":
        return PidController(replace(self.config, **gains))


@dataclass(frozen=True)
class ZeroController:
    """Never applies torque; shows the uncontrolled fall."""

    def initial_state(self) -> None:
        return None

    def step(self, state: None, obs: Observation, dt: float) -> tuple[None, float]:
        return None, zero_controller(obs)
