"""SpaceEx model export for the bounded affine hybrid model.

Writes three files next to each other:

* ``<stem>.xml``  - SpaceEx component file: a base component ``unicycle``
  declaring the variables, the torque input and the coefficient constants,
  and a network component ``system`` that binds the constants to values;
* ``<stem>.cfg``  - configuration stub with the initial set and the
  forbidden state ``loc(unicycle)==fallen``;
* ``<stem>.json`` - the same model in this package's own JSON format, the
  canonical artifact.

Coefficients are written with ``repr`` so re-parsing returns them exactly.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from pathlib import Path

from ..linearize import FALLEN, INPUT, BoundedHybridModel, Constraint

NS = "http://www-verimag.imag.fr/xml-namespaces/sspaceex"
BASE, NETWORK = "unicycle", "system"

# torque term each riding location feeds into the flows
_TORQUE = {"riding_normal": INPUT, "riding_max": "tau_max", "riding_min": "-tau_max"}


def _num(x: float) -> str:
    return repr(float(x))


def _constraint(c: Constraint) -> str:
    terms = []
    for var, k in c.coeffs.items():
        terms.append(var if k == 1 else f"{_num(k)}*{var}")
    lhs = " + ".join(terms) if terms else "0"
    return f"{lhs} {c.op} {_num(c.rhs)}"


def _conj(cs) -> str:
    return " & ".join(_constraint(c) for c in cs) if cs else "true"


def _flow(name: str) -> str:
    if name == FALLEN:
        return "v' == 0 & th' == 0 & om' == 0"
    u = _TORQUE[name]
    return (f"v' == (c_tau*{u} + c_theta*th + c0) / m_W & th' == om & "
            f"om' == (d_tau*{u} + d_theta*th + d0) / I_S")


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def to_spaceex_xml(model: BoundedHybridModel) -> str:
    ids = {loc.name: i + 1 for i, loc in enumerate(model.locations)}
    lines = [
        '<?xml version="1.0" encoding="iso-8859-1"?>',
        f'<sspaceex xmlns="{NS}" version="0.2" math="SpaceEx">',
        f'  <component id="{BASE}">',
    ]
    for v in model.variables:
        lines.append(f'    <param name="{v}" type="real" local="false" d1="1" d2="1" dynamics="any" />')
    for u in model.inputs:
        lines.append(f'    <param name="{u}" type="real" local="false" d1="1" d2="1" dynamics="any" controlled="false" />')
    for k in model.constants:
        lines.append(f'    <param name="{k}" type="real" local="false" d1="1" d2="1" dynamics="const" />')
    labels = sorted({t.label for t in model.transitions})
    for lab in labels:
        lines.append(f'    <param name="{lab}" type="label" local="false" />')
    for i, loc in enumerate(model.locations):
        lines.append(f'    <location id="{ids[loc.name]}" name="{loc.name}" x="{150 + 300 * i}" y="200" width="260" height="160">')
        lines.append(f"      <invariant>{_escape(_conj(loc.invariant))}</invariant>")
        lines.append(f"      <flow>{_escape(_flow(loc.name))}</flow>")
        lines.append("    </location>")
    for t in model.transitions:
        lines.append(f'    <transition source="{ids[t.source]}" target="{ids[t.target]}">')
        lines.append(f"      <label>{t.label}</label>")
        lines.append(f"      <guard>{_escape(_conj(t.guard))}</guard>")
        lines.append("    </transition>")
    lines.append("  </component>")
    lines.append(f'  <component id="{NETWORK}">')
    for v in model.variables + model.inputs:
        lines.append(f'    <param name="{v}" type="real" local="false" d1="1" d2="1" dynamics="any" controlled="true" />')
    for lab in labels:
        lines.append(f'    <param name="{lab}" type="label" local="false" />')
    lines.append(f'    <bind component="{BASE}" as="{BASE}" x="200" y="100">')
    for v in model.variables + model.inputs:
        lines.append(f'      <map key="{v}">{v}</map>')
    for k, val in model.constants.items():
        lines.append(f'      <map key="{k}">{_num(val)}</map>')
    for lab in labels:
        lines.append(f'      <map key="{lab}">{lab}</map>')
    lines.append("    </bind>")
    lines.append("  </component>")
    lines.append("</sspaceex>")
    return "\n".join(lines) + "\n"


def to_spaceex_cfg(model: BoundedHybridModel, time_horizon: float = 5.0) -> str:
    init = " & ".join([_constraint(c) for c in model.initial] + [f"loc({BASE})=={model.initial_location}"])
    return "\n".join([
        "# SpaceEx configuration stub",
        f'system = "{NETWORK}"',
        f'initially = "{init}"',
        f'forbidden = "loc({BASE})=={FALLEN}"',
        'scenario = "stc"',
        'directions = "oct"',
        "sampling-time = 0.01",
        f"time-horizon = {time_horizon}",
        "iter-max = 10",
        'output-variables = "th,om"',
        'output-format = "GEN"',
        "rel-err = 1.0e-12",
        "abs-err = 1.0e-13",
    ]) + "\n"


def export_verification_model(model: BoundedHybridModel, path) -> dict[str, Path]:
    """Write the ``.xml``, ``.cfg`` and ``.json`` files; return their paths."""
    path = Path(path)
    stem = path.with_suffix("")
    out = {"xml": stem.with_suffix(".xml"), "cfg": stem.with_suffix(".cfg"), "json": stem.with_suffix(".json")}
    out["xml"].write_text(to_spaceex_xml(model), encoding="iso-8859-1")
    out["cfg"].write_text(to_spaceex_cfg(model))
    out["json"].write_text(json.dumps(model.to_dict(), indent=2) + "\n")
    return out


def read_spaceex_xml(path) -> dict:
    """Parse an exported file back into a summary dict.

    Returns ``variables`` (non-constant real params of the base component
    that are controlled), ``inputs``, ``constants`` (from the network
    binding), ``locations`` (name -> {"flow", "invariant"}) and
    ``transitions`` (list of (source, target, label, guard)).
    """
    root = ET.parse(path).getroot()
    q = lambda tag: f"{{{NS}}}{tag}"  # noqa: E731
    comps = {c.get("id"): c for c in root.findall(q("component"))}
    base = comps[BASE]
    variables, inputs, consts = [], [], []
    for prm in base.findall(q("param")):
        if prm.get("type") != "real":
            continue
        if prm.get("dynamics") == "const":
            consts.append(prm.get("name"))
        elif prm.get("controlled") == "false":
            inputs.append(prm.get("name"))
        else:
            variables.append(prm.get("name"))
    names = {}
    locations = {}
    for loc in base.findall(q("location")):
        names[loc.get("id")] = loc.get("name")
        locations[loc.get("name")] = {
            "invariant": loc.findtext(q("invariant")),
            "flow": loc.findtext(q("flow")),
        }
    transitions = [
        (names[t.get("source")], names[t.get("target")], t.findtext(q("label")), t.findtext(q("guard")))
        for t in base.findall(q("transition"))
    ]
    bind = comps[NETWORK].find(q("bind"))
    constants = {m.get("key"): float(m.text) for m in bind.findall(q("map")) if m.get("key") in consts}
    return {"variables": variables, "inputs": inputs, "constants": constants,
            "locations": locations, "transitions": transitions}


def read_model_json(path) -> BoundedHybridModel:
    return BoundedHybridModel.from_dict(json.loads(Path(path).read_text()))
