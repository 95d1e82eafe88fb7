"""Affine surrogates of the nonlinear fields and the bounded affine hybrid model.

Reachability tools for affine dynamics cannot digest sin/cos, so the wheel
force F_W2(theta, tau) and the saddle torque tau_S(theta, tau) are replaced
by least-squares planes ``c0 + c_theta * theta + c_tau * tau`` fitted on a
uniform grid.  The wheel position is dropped and the angular rate and speed
get artificial bounds, leaving a three-variable model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .automaton import Bounds
from .physics import Derivatives, Params, State, adjusted_mass, wheel_force_and_saddle_torque

FORMAT_VERSION = 1
QUARTER_PI = math.pi / 4


@dataclass(frozen=True)
class AffineModel:
    f2_coeffs: tuple[float, float, float]      # F_W2 ~ c0 + c_theta*theta + c_tau*tau
    tauS_coeffs: tuple[float, float, float]    # tau_S ~ d0 + d_theta*theta + d_tau*tau
    theta_range: tuple[float, float]
    tau_range: tuple[float, float]
    residual_max_f2: float
    residual_max_tauS: float
    bounds: Bounds
    params_snapshot: Params
    grid_n: int = 101

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "f2_coeffs": list(self.f2_coeffs),
            "tauS_coeffs": list(self.tauS_coeffs),
            "theta_range": list(self.theta_range),
            "tau_range": list(self.tau_range),
            "residual_max_f2": self.residual_max_f2,
            "residual_max_tauS": self.residual_max_tauS,
            "bounds": {"omega_bound": self.bounds.omega_bound, "v_bound": self.bounds.v_bound},
            "params_snapshot": self.params_snapshot.to_dict(),
            "grid_n": self.grid_n,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AffineModel":
        if d.get("format_version") != FORMAT_VERSION:
            raise ValueError(f"unsupported affine model format_version {d.get('format_version')!r}")
        return cls(
            f2_coeffs=tuple(float(x) for x in d["f2_coeffs"]),
            tauS_coeffs=tuple(float(x) for x in d["tauS_coeffs"]),
            theta_range=tuple(float(x) for x in d["theta_range"]),
            tau_range=tuple(float(x) for x in d["tau_range"]),
            residual_max_f2=float(d["residual_max_f2"]),
            residual_max_tauS=float(d["residual_max_tauS"]),
            bounds=Bounds(**d["bounds"]),
            params_snapshot=Params.from_dict(d["params_snapshot"]),
            grid_n=int(d["grid_n"]),
        )


def grid(theta_range, tau_range, grid_n: int) -> tuple[np.ndarray, np.ndarray]:
    """Flattened ``(theta, tau)`` coordinates of a uniform grid_n x grid_n grid."""
    th, tq = np.meshgrid(
        np.linspace(theta_range[0], theta_range[1], grid_n),
        np.linspace(tau_range[0], tau_range[1], grid_n),
        indexing="ij",
    )
    return th.ravel(), tq.ravel()


def least_squares_plane(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Coefficients ``(c0, cx, cy)`` minimising sum (c0 + cx x + cy y - z)^2.

    Solved through the 3x3 normal equations.
    """
    X = np.column_stack([np.ones_like(x), x, y])
    normal = X.T @ X
    if np.linalg.cond(normal) > 1e12:
        raise np.linalg.LinAlgError("degenerate fitting grid: normal matrix is singular")
    return np.linalg.solve(normal, X.T @ z)


def plane(coeffs, x, y):
    c0, cx, cy = coeffs
    return c0 + cx * x + cy * y


def fit_affine(
    p: Params,
    theta_range: tuple[float, float] = (-QUARTER_PI, QUARTER_PI),
    tau_range: tuple[float, float] | None = None,
    grid_n: int = 101,
    bounds: Bounds = Bounds(),
) -> AffineModel:
    if grid_n < 3:
        raise ValueError(f"grid_n must be >= 3, got {grid_n}")
    lo, hi = theta_range
    if not -math.pi / 2 <= lo < hi <= math.pi / 2:
        raise ValueError(f"theta_range must be an increasing sub-interval of [-pi/2, pi/2], got {theta_range}")
    if tau_range is None:
        tau_range = (-p.tau_max, p.tau_max)
    th, tq = grid(theta_range, tau_range, grid_n)
    f2, ts = wheel_force_and_saddle_torque(th, tq, p)
    cf = least_squares_plane(th, tq, f2)
    cs = least_squares_plane(th, tq, ts)
    return AffineModel(
        f2_coeffs=tuple(float(v) for v in cf),
        tauS_coeffs=tuple(float(v) for v in cs),
        theta_range=(float(lo), float(hi)),
        tau_range=(float(tau_range[0]), float(tau_range[1])),
        residual_max_f2=float(np.max(np.abs(plane(cf, th, tq) - f2))),
        residual_max_tauS=float(np.max(np.abs(plane(cs, th, tq) - ts))),
        bounds=bounds,
        params_snapshot=p,
        grid_n=grid_n,
    )


def linearized_derivatives(s: State, tau: float, m: AffineModel, p: Params) -> Derivatives:
    """Flows with both nonlinear fields replaced by their affine surrogates.

    Evaluating outside ``m.theta_range`` is allowed and sets ``extrapolated``.
    """
    f2 = plane(m.f2_coeffs, s.theta, tau)
    ts = plane(m.tauS_coeffs, s.theta, tau)
    lo, hi = m.theta_range
    return Derivatives(
        dx_W=s.v_W,
        dv_W=f2 / adjusted_mass(p),
        dtheta=s.omega,
        domega=ts / p.I_S,
        extrapolated=not lo <= s.theta <= hi,
    )


# -- bounded affine hybrid model ------------------------------------------------

VARIABLES = ("v", "th", "om")
INPUT = "u"
RIDING = ("riding_normal", "riding_max", "riding_min")
FALLEN = "fallen"


@dataclass(frozen=True)
class Constraint:
    """Linear constraint ``sum coeffs[var] * var  op  rhs``."""

    coeffs: dict
    op: str        # "<=", ">=" or "=="
    rhs: float

    def to_dict(self) -> dict:
        return {"coeffs": dict(self.coeffs), "op": self.op, "rhs": self.rhs}

    @classmethod
    def from_dict(cls, d: dict) -> "Constraint":
        return cls(dict(d["coeffs"]), d["op"], float(d["rhs"]))


@dataclass(frozen=True)
class Location:
    """``flow[var]`` is ``{"coeffs": {name: value}, "const": value}``; an affine right-hand side."""

    name: str
    flow: dict
    invariant: tuple[Constraint, ...] = ()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "flow": {k: {"coeffs": dict(v["coeffs"]), "const": v["const"]} for k, v in self.flow.items()},
            "invariant": [c.to_dict() for c in self.invariant],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Location":
        flow = {k: {"coeffs": dict(v["coeffs"]), "const": float(v["const"])} for k, v in d["flow"].items()}
        return cls(d["name"], flow, tuple(Constraint.from_dict(c) for c in d["invariant"]))


@dataclass(frozen=True)
class Transition:
    source: str
    target: str
    guard: tuple[Constraint, ...]
    label: str

    def to_dict(self) -> dict:
        return {"source": self.source, "target": self.target, "label": self.label,
                "guard": [c.to_dict() for c in self.guard]}

    @classmethod
    def from_dict(cls, d: dict) -> "Transition":
        return cls(d["source"], d["target"], tuple(Constraint.from_dict(c) for c in d["guard"]), d["label"])


@dataclass(frozen=True)
class BoundedHybridModel:
    variables: tuple[str, ...]
    inputs: tuple[str, ...]
    locations: tuple[Location, ...]
    transitions: tuple[Transition, ...]
    initial_location: str
    initial: tuple[Constraint, ...]
    constants: dict = field(default_factory=dict)

    def location(self, name: str) -> Location:
        for loc in self.locations:
            if loc.name == name:
                return loc
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "variables": list(self.variables),
            "inputs": list(self.inputs),
            "constants": dict(self.constants),
            "locations": [loc.to_dict() for loc in self.locations],
            "transitions": [t.to_dict() for t in self.transitions],
            "initial_location": self.initial_location,
            "initial": [c.to_dict() for c in self.initial],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundedHybridModel":
        if d.get("format_version") != FORMAT_VERSION:
            raise ValueError(f"unsupported hybrid model format_version {d.get('format_version')!r}")
        return cls(
            variables=tuple(d["variables"]),
            inputs=tuple(d["inputs"]),
            locations=tuple(Location.from_dict(x) for x in d["locations"]),
            transitions=tuple(Transition.from_dict(x) for x in d["transitions"]),
            initial_location=d["initial_location"],
            initial=tuple(Constraint.from_dict(x) for x in d["initial"]),
            constants={k: float(v) for k, v in d["constants"].items()},
        )


def _flows(m: AffineModel, p: Params, torque: float | None) -> dict:
    """Affine flows; ``torque=None`` keeps the torque as the free input ``u``."""
    m_W = adjusted_mass(p)
    c0, c_th, c_tau = m.f2_coeffs
    d0, d_th, d_tau = m.tauS_coeffs
    v = {"coeffs": {"th": c_th / m_W}, "const": c0 / m_W}
    om = {"coeffs": {"th": d_th / p.I_S}, "const": d0 / p.I_S}
    if torque is None:
        v["coeffs"][INPUT] = c_tau / m_W
        om["coeffs"][INPUT] = d_tau / p.I_S
    else:
        v["const"] += c_tau * torque / m_W
        om["const"] += d_tau * torque / p.I_S
    return {"v": v, "th": {"coeffs": {"om": 1.0}, "const": 0.0}, "om": om}


def assemble_bounded_model(
    m: AffineModel, p: Params, initial_theta: float = 0.0
) -> BoundedHybridModel:
    """Three riding locations (motor normal / max / min) plus ``fallen``."""
    half_pi = math.pi / 2
    wb, vb, tmax = m.bounds.omega_bound, m.bounds.v_bound, p.tau_max
    safe = (
        Constraint({"th": 1.0}, "<=", half_pi), Constraint({"th": 1.0}, ">=", -half_pi),
        Constraint({"om": 1.0}, "<=", wb), Constraint({"om": 1.0}, ">=", -wb),
        Constraint({"v": 1.0}, "<=", vb), Constraint({"v": 1.0}, ">=", -vb),
    )
    motor_inv = {
        "riding_normal": (Constraint({INPUT: 1.0}, "<=", tmax), Constraint({INPUT: 1.0}, ">=", -tmax)),
        "riding_max": (Constraint({INPUT: 1.0}, ">=", tmax),),
        "riding_min": (Constraint({INPUT: 1.0}, "<=", -tmax),),
    }
    torque = {"riding_normal": None, "riding_max": tmax, "riding_min": -tmax}
    locations = [Location(n, _flows(m, p, torque[n]), safe + motor_inv[n]) for n in RIDING]
    zero = {v: {"coeffs": {}, "const": 0.0} for v in VARIABLES}
    locations.append(Location(FALLEN, zero, ()))

    transitions = [
        Transition("riding_normal", "riding_max", (Constraint({INPUT: 1.0}, "==", tmax),), "saturate_max"),
        Transition("riding_max", "riding_normal", (Constraint({INPUT: 1.0}, "==", tmax),), "release_max"),
        Transition("riding_normal", "riding_min", (Constraint({INPUT: 1.0}, "==", -tmax),), "saturate_min"),
        Transition("riding_min", "riding_normal", (Constraint({INPUT: 1.0}, "==", -tmax),), "release_min"),
    ]
    falls = (
        ("th", ">=", half_pi), ("th", "<=", -half_pi),
        ("om", ">=", wb), ("om", "<=", -wb),
        ("v", ">=", vb), ("v", "<=", -vb),
    )
    for src in RIDING:
        for var, op, rhs in falls:
            transitions.append(Transition(src, FALLEN, (Constraint({var: 1.0}, op, rhs),), "fall"))

    initial = (
        Constraint({"v": 1.0}, "==", 0.0),
        Constraint({"th": 1.0}, "==", initial_theta),
        Constraint({"om": 1.0}, "==", 0.0),
    )
    return BoundedHybridModel(
        variables=VARIABLES,
        inputs=(INPUT,),
        locations=tuple(locations),
        transitions=tuple(transitions),
        initial_location="riding_normal",
        initial=initial,
        constants={
            "c0": m.f2_coeffs[0], "c_theta": m.f2_coeffs[1], "c_tau": m.f2_coeffs[2],
            "d0": m.tauS_coeffs[0], "d_theta": m.tauS_coeffs[1], "d_tau": m.tauS_coeffs[2],
            "m_W": adjusted_mass(p), "I_S": p.I_S, "tau_max": tmax,
            "omega_bound": wb, "v_bound": vb,
        },
    )
