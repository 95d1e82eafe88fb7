"""Longitudinal equations of motion of the pedal-generator unicycle.

Everything here is a pure function of (state, motor torque, parameters).
The force/torque helpers accept numpy arrays as well as floats so the same
code path serves the simulator (scalars) and the linearization grid (arrays).

Sign conventions: the rod angle ``theta`` and every torque on the saddle are
counter-clockwise positive; horizontal forces on the wheel are positive
towards +x.  A positive motor torque rotates the wheel counter-clockwise and
the saddle clockwise.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

BETA_PRINTED = "printed"
BETA_CONSTRAINT = "constraint"
BETA_MODELS = (BETA_PRINTED, BETA_CONSTRAINT)


class ModelFault(ArithmeticError):
    """A model quantity became non-finite."""


@dataclass(frozen=True)
class Params:
    """Physical constants of one unicycle (SI units).

    ``r_S`` is not used by the equations of motion; it only sets the drawn
    rod length in animation frames.  ``beta_model`` selects the force-split
    ratio: ``"printed"`` (default) or ``"constraint"``, see :func:`split_ratio`.
    """

    r_W: float          # wheel radius [m]
    r_com: float        # bottom of saddle to its centre of mass [m]
    r_S: float          # bottom of saddle to its top [m]
    m_W_real: float     # actual wheel mass [kg]
    m_S: float          # saddle + rider mass [kg]
    I_S: float          # saddle moment of inertia about its centre of mass [kg m^2]
    xi: float           # wheel mass distribution, 0.5 (disc) .. 1 (ring)
    tau_max: float      # motor torque limit, symmetric [N m]
    g: float = 9.81
    beta_model: str = BETA_PRINTED

    def problems(self) -> list[tuple[str, str]]:
        """Return ``(field, message)`` for every violated invariant."""
        out = []
        for name in ("r_W", "r_com", "r_S", "m_W_real", "m_S", "I_S", "tau_max", "g"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                out.append((name, f"must be a number, got {value!r}"))
            elif not math.isfinite(value) or value <= 0:
                out.append((name, f"must be finite and > 0, got {value!r}"))
        if not isinstance(self.xi, (int, float)) or isinstance(self.xi, bool):
            out.append(("xi", f"must be a number, got {self.xi!r}"))
        elif not 0.5 <= self.xi <= 1.0:
            out.append(("xi", f"must lie in [0.5, 1], got {self.xi!r}"))
        if not out and self.r_com > self.r_S:
            out.append(("r_com", f"must not exceed r_S ({self.r_com} > {self.r_S})"))
        if self.beta_model not in BETA_MODELS:
            out.append(("beta_model", f"must be one of {BETA_MODELS}, got {self.beta_model!r}"))
        return out

    def validate(self) -> "Params":
        bad = self.problems()
        if bad:
            raise ValueError("; ".join(f"{k}: {msg}" for k, msg in bad))
        return self

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Params":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown parameter(s): {sorted(unknown)}")
        return cls(**data).validate()

    def with_(self, **changes) -> "Params":
        return replace(self, **changes)


# Example parameter set used throughout tests and docs.  The I_S value is a
# free choice, not derived from the rod geometry.
DEFAULT_PARAMS = Params(
    r_W=0.3, r_com=0.8, r_S=1.0, m_W_real=3.0, m_S=80.0,
    I_S=17.07, xi=0.75, tau_max=60.0, g=9.81,
)


@dataclass(frozen=True)
class State:
    x_W: float = 0.0
    v_W: float = 0.0
    theta: float = 0.0
    omega: float = 0.0

    def is_finite(self) -> bool:
        return all(math.isfinite(v) for v in (self.x_W, self.v_W, self.theta, self.omega))

    def mirrored(self) -> "State":
        return State(-self.x_W, -self.v_W, -self.theta, -self.omega)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x_W, self.v_W, self.theta, self.omega)


@dataclass(frozen=True)
class ForceBreakdown:
    """Every intermediate quantity of the force derivation for one instant."""

    m_W: float
    F_W_mot: float
    tau_S_g: float
    F_W_g: float
    F_W: float
    beta: float
    F_W1: float
    F_W2: float
    tau_S_W: float
    tau_S: float


FORCE_FIELDS = tuple(f.name for f in fields(ForceBreakdown))


@dataclass(frozen=True)
class Derivatives:
    dx_W: float
    dv_W: float
    dtheta: float
    domega: float
    # set by surrogate evaluation outside the fitted angle range
    extrapolated: bool = False

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.dx_W, self.dv_W, self.dtheta, self.domega)


def adjusted_mass(p: Params) -> float:
    """Wheel mass with its rotational inertia folded in: m (1 + xi)."""
    return p.m_W_real * (1.0 + p.xi)


def motor_force(tau_W_mot, p: Params):
    """Horizontal force on the wheel produced by the motor torque."""
    return -(-tau_W_mot) / p.r_W


def gravity_terms(theta, p: Params):
    """Return ``(tau_S_g, F_W_g)``: gravity torque on the saddle and the
    horizontal push it transmits down the rod onto the wheel."""
    s = np.sin(theta)
    tau_S_g = p.m_S * p.g * s * p.r_com
    F_W_g = p.m_S * p.g * np.cos(theta) * s
    return tau_S_g, F_W_g


def split_ratio(theta, p: Params):
    """Ratio F_W1 / F_W2 of the horizontal force shared between saddle and wheel.

    ``"printed"``:    (m_S / m_W) (1 + 3 cos^2 theta)
    ``"constraint"``: (m_S / m_W) / (1 + m_S r_com^2 cos^2 theta / I_S), which is
    what the rigid-attachment condition a_S + alpha_S r_com cos(theta) = a_W
    gives when solved for the ratio.
    """
    m_W = adjusted_mass(p)
    c2 = np.cos(theta) ** 2
    if p.beta_model == BETA_CONSTRAINT:
        return (p.m_S / m_W) / (1.0 + p.m_S * p.r_com**2 * c2 / p.I_S)
    return (p.m_S / m_W) * (1.0 + 3.0 * c2)


def force_split(F_W, theta, p: Params):
    """Return ``(beta, F_W1, F_W2)`` with F_W1 + F_W2 = F_W."""
    beta = split_ratio(theta, p)
    F_W1 = F_W * beta / (1.0 + beta)
    F_W2 = F_W * 1.0 / (1.0 + beta)
    return beta, F_W1, F_W2


def saddle_torque(F_W1, theta, tau_W_mot, tau_S_g, p: Params):
    """Total torque on the saddle: motor reaction + gravity + wheel push."""
    tau_S_W = F_W1 * p.r_com * np.cos(theta)
    return -tau_W_mot + tau_S_g + tau_S_W


def _fields(theta, tau_W_mot, p: Params):
    m_W = adjusted_mass(p)
    F_W_mot = motor_force(tau_W_mot, p)
    tau_S_g, F_W_g = gravity_terms(theta, p)
    F_W = F_W_mot + F_W_g
    beta, F_W1, F_W2 = force_split(F_W, theta, p)
    tau_S_W = F_W1 * p.r_com * np.cos(theta)
    tau_S = -tau_W_mot + tau_S_g + tau_S_W
    return m_W, F_W_mot, tau_S_g, F_W_g, F_W, beta, F_W1, F_W2, tau_S_W, tau_S


def breakdown(s: State, tau_W_mot: float, p: Params) -> ForceBreakdown:
    values = _fields(s.theta, tau_W_mot, p)
    return ForceBreakdown(*(float(v) for v in values))


def wheel_force_and_saddle_torque(theta, tau_W_mot, p: Params):
    """Vectorised ``(F_W2, tau_S)``, the two nonlinear fields driving the flows."""
    out = _fields(np.asarray(theta, dtype=float), np.asarray(tau_W_mot, dtype=float), p)
    return out[7], out[9]


def derivatives(s: State, tau_W_mot: float, p: Params) -> Derivatives:
    fb = breakdown(s, tau_W_mot, p)
    return Derivatives(
        dx_W=s.v_W,
        dv_W=fb.F_W2 / fb.m_W,
        dtheta=s.omega,
        domega=fb.tau_S / p.I_S,
    )
