"""Scenario and parameter JSON files.

A scenario bundles parameters, simulation settings, the rider profile, the
controller and output paths.  Every section except ``params`` may be omitted
and is then filled with defaults.  Validation reports every problem at once,
each tagged with its dotted field path.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

from ..controller import PidConfig, PidController, ZeroController
from ..intent import CONSTANT, IntentProfile, Segment, segment_problems
from ..physics import Params, State
from ..simulation import SimConfig

FORMAT_VERSION = 1
CONTROLLER_KINDS = ("pid", "zero")


class ScenarioError(ValueError):
    """Invalid scenario; ``errors`` lists ``(path, message)`` pairs."""

    def __init__(self, errors: list[tuple[str, str]], source: str = "scenario"):
        self.errors = errors
        lines = "\n".join(f"  {path}: {msg}" for path, msg in errors)
        super().__init__(f"{source} is invalid:\n{lines}")


@dataclass(frozen=True)
class Outputs:
    log: str | None = None
    plot: str | None = None
    plot_fields: tuple[str, ...] = ("theta",)
    frames: str | None = None
    frame_every: int = 100


@dataclass(frozen=True)
class Scenario:
    params: Params
    sim: SimConfig = field(default_factory=SimConfig)
    profile: IntentProfile = field(default_factory=IntentProfile)
    controller_kind: str = "pid"
    pid: PidConfig = field(default_factory=PidConfig)
    outputs: Outputs = field(default_factory=Outputs)

    def controller(self):
        return PidController(self.pid) if self.controller_kind == "pid" else ZeroController()


def _is_num(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _section(data: dict, key: str, allowed, required, errors) -> dict:
    sec = data.get(key, {})
    if not isinstance(sec, dict):
        errors.append((key, "must be an object"))
        return {}
    for k in sorted(set(sec) - set(allowed)):
        errors.append((f"{key}.{k}", "unknown field"))
    for k in required:
        if k not in sec:
            errors.append((f"{key}.{k}", "required field missing"))
    return sec


def _numbers(sec: dict, prefix: str, names, errors) -> bool:
    ok = True
    for k in names:
        if k in sec and sec[k] is not None and (not _is_num(sec[k]) or not math.isfinite(sec[k])):
            errors.append((f"{prefix}.{k}", f"must be a finite number, got {sec[k]!r}"))
            ok = False
    return ok


def parse_scenario(data) -> Scenario:
    """Build a validated :class:`Scenario` from decoded JSON."""
    errors: list[tuple[str, str]] = []
    if not isinstance(data, dict):
        raise ScenarioError([("", "top level must be a JSON object")])
    top = {"format_version", "params", "sim", "intent", "controller", "outputs"}
    for k in sorted(set(data) - top):
        errors.append((k, "unknown section"))
    if data.get("format_version", FORMAT_VERSION) != FORMAT_VERSION:
        errors.append(("format_version", f"unsupported version {data['format_version']!r}"))
    if "params" not in data:
        errors.append(("params", "required section missing"))

    # params
    pnames = [f.name for f in fields(Params)]
    required = [n for n in pnames if n not in ("g", "beta_model")]
    psec = _section(data, "params", pnames, required if "params" in data else [], errors)
    params = None
    if "params" in data and all(k in psec for k in required) and _numbers(psec, "params", required + ["g"], errors):
        params = Params(**{k: v for k, v in psec.items() if k in pnames})
        errors.extend((f"params.{k}", m) for k, m in params.problems())

    # sim
    snames = [f.name for f in fields(SimConfig)]
    ssec = _section(data, "sim", snames, [], errors)
    sim = None
    if _numbers(ssec, "sim", ["dt", "duration", "omega_bound", "v_bound", "slew_limit"], errors):
        init = ssec.get("initial_state", {})
        state_names = [f.name for f in fields(State)]
        if not isinstance(init, dict):
            errors.append(("sim.initial_state", "must be an object"))
        else:
            for k in sorted(set(init) - set(state_names)):
                errors.append((f"sim.initial_state.{k}", "unknown field"))
            if _numbers(init, "sim.initial_state", state_names, errors):
                kw = {k: v for k, v in ssec.items() if k in snames and k != "initial_state"}
                sim = SimConfig(initial_state=State(**{k: float(v) for k, v in init.items() if k in state_names}), **kw)
                errors.extend((f"sim.{k}", m) for k, m in sim.problems())

    # intent
    isec = _section(data, "intent", ["segments"], [], errors)
    profile = IntentProfile()
    if "segments" in isec:
        segs = isec["segments"]
        if not isinstance(segs, list):
            errors.append(("intent.segments", "must be a list"))
        else:
            parsed = []
            for i, s in enumerate(segs):
                where = f"intent.segments[{i}]"
                if not isinstance(s, dict):
                    errors.append((where, "must be an object"))
                    continue
                for k in sorted(set(s) - {"start", "kind", "target", "slope"}):
                    errors.append((f"{where}.{k}", "unknown field"))
                if "start" not in s:
                    errors.append((f"{where}.start", "required field missing"))
                    continue
                if _numbers(s, where, ["start", "target", "slope"], errors):
                    parsed.append(Segment(float(s["start"]), s.get("kind", CONSTANT), float(s.get("target", 0.0)),
                                          None if s.get("slope") is None else float(s["slope"])))
            if len(parsed) == len(segs):
                bad = segment_problems(parsed)
                errors.extend((f"intent.{k}", m) for k, m in bad)
                if not bad:
                    profile = IntentProfile(tuple(parsed))

    # controller
    pid_names = [f.name for f in fields(PidConfig)]
    csec = _section(data, "controller", ["kind"] + pid_names, [], errors)
    kind = csec.get("kind", "pid")
    if kind not in CONTROLLER_KINDS:
        errors.append(("controller.kind", f"must be one of {CONTROLLER_KINDS}, got {kind!r}"))
    pid = PidConfig()
    if _numbers(csec, "controller", pid_names, errors):
        pid = PidConfig(**{k: v for k, v in csec.items() if k in pid_names})
        errors.extend((f"controller.{k}", m) for k, m in pid.problems())

    # outputs
    onames = [f.name for f in fields(Outputs)]
    osec = _section(data, "outputs", onames, [], errors)
    outputs = Outputs()
    for k in ("log", "plot", "frames"):
        if k in osec and osec[k] is not None and not isinstance(osec[k], str):
            errors.append((f"outputs.{k}", "must be a path string or null"))
    pf = osec.get("plot_fields", list(Outputs.plot_fields))
    if not (isinstance(pf, list) and all(isinstance(x, str) for x in pf)):
        errors.append(("outputs.plot_fields", "must be a list of column names"))
    every = osec.get("frame_every", Outputs.frame_every)
    if not (isinstance(every, int) and not isinstance(every, bool) and every >= 1):
        errors.append(("outputs.frame_every", f"must be an integer >= 1, got {every!r}"))

    if errors:
        raise ScenarioError(errors)
    outputs = Outputs(
        log=osec.get("log"), plot=osec.get("plot"), plot_fields=tuple(pf),
        frames=osec.get("frames"), frame_every=every,
    )
    return Scenario(params, sim, profile, kind, pid, outputs)


def load_params(path) -> Params:
    """Read a flat JSON parameter file (also accepts a full scenario)."""
    data = _read_json(path)
    if isinstance(data, dict) and "params" in data:
        data = data["params"]
    try:
        return Params.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise ScenarioError([("params", str(exc))], str(path)) from exc


def _read_json(path):
    path = Path(path)
    if not path.is_file():
        raise ScenarioError([("", f"file not found: {path}")], str(path))
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError([("", f"malformed JSON: {exc}")], str(path)) from exc


def load_scenario(path) -> Scenario:
    data = _read_json(path)
    try:
        return parse_scenario(data)
    except ScenarioError as exc:
        raise ScenarioError(exc.errors, str(path)) from None


def scenario_to_dict(s: Scenario) -> dict:
    sim = s.sim
    return {
        "format_version": FORMAT_VERSION,
        "params": s.params.to_dict(),
        "sim": {
            "dt": sim.dt,
            "duration": sim.duration,
            "initial_state": {f.name: getattr(sim.initial_state, f.name) for f in fields(State)},
            "omega_bound": sim.omega_bound,
            "v_bound": sim.v_bound,
            "slew_limit": sim.slew_limit,
            "allow_large_dt": sim.allow_large_dt,
        },
        "intent": s.profile.to_dict(),
        "controller": {"kind": s.controller_kind, **s.pid.to_dict()},
        "outputs": {
            "log": s.outputs.log,
            "plot": s.outputs.plot,
            "plot_fields": list(s.outputs.plot_fields),
            "frames": s.outputs.frames,
            "frame_every": s.outputs.frame_every,
        },
    }


def dumps_scenario(s: Scenario) -> str:
    return json.dumps(scenario_to_dict(s), indent=2) + "\n"


def save_scenario(s: Scenario, path) -> None:
    Path(path).write_text(dumps_scenario(s))
