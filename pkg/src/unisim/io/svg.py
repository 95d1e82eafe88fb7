"""Hand-written SVG output: time-series plots and animation frames.

No plotting library is involved so that identical logs give byte-identical
files.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from ..physics import DEFAULT_PARAMS, Params
from .csvlog import NUMERIC_COLUMNS, column, fmt

FORMAT_VERSION = 1
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")


def _n(x: float) -> str:
    """Coordinate formatting; 3 decimals is well below a pixel."""
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        lo, hi = lo - 1.0, hi + 1.0
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [round(k * step, 12) for k in range(first, last + 1)]


def plot_svg(records, fields, path, width: int = 800, height: int = 450, title: str | None = None) -> None:
    """Plot log columns against time, one polyline per field."""
    fields = list(fields)
    for f in fields:
        if f not in NUMERIC_COLUMNS or f == "t":
            raise KeyError(f"unknown plot field {f!r}; choose from {', '.join(NUMERIC_COLUMNS[1:])}")
    if not records:
        raise ValueError("cannot plot an empty log")
    t = column(records, "t")
    series = [column(records, f) for f in fields]
    ymin = min(float(s.min()) for s in series)
    ymax = max(float(s.max()) for s in series)
    if ymax - ymin < 1e-12:
        ymin, ymax = ymin - 1.0, ymax + 1.0
    pad = 0.05 * (ymax - ymin)
    ymin, ymax = ymin - pad, ymax + pad
    tmin, tmax = float(t[0]), float(t[-1])
    if tmax <= tmin:
        tmax = tmin + 1.0

    left, right, top, bottom = 70, 20, 40, 50
    pw, ph = width - left - right, height - top - bottom

    def X(v):
        return left + (v - tmin) / (tmax - tmin) * pw

    def Y(v):
        return top + (ymax - v) / (ymax - ymin) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" data-format-version="{FORMAT_VERSION}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:g}" y="22" text-anchor="middle" font-size="15">{title}</text>')
    out.append(f'<g class="axes" stroke="black" stroke-width="1">'
               f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}"/>'
               f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}"/></g>')
    ticks = ['<g class="ticks" font-size="11" fill="black">']
    for v in nice_ticks(tmin, tmax):
        x = _n(X(v))
        ticks.append(f'<line x1="{x}" y1="{top + ph}" x2="{x}" y2="{top + ph + 5}" stroke="black"/>'
                     f'<text x="{x}" y="{top + ph + 18}" text-anchor="middle">{fmt(v)}</text>')
    for v in nice_ticks(ymin, ymax):
        y = _n(Y(v))
        ticks.append(f'<line x1="{left - 5}" y1="{y}" x2="{left}" y2="{y}" stroke="black"/>'
                     f'<line x1="{left}" y1="{y}" x2="{left + pw}" y2="{y}" stroke="#e0e0e0"/>'
                     f'<text x="{left - 8}" y="{y}" text-anchor="end" dominant-baseline="middle">{fmt(v)}</text>')
    ticks.append("</g>")
    out.extend(ticks)
    out.append(f'<text x="{left + pw / 2:g}" y="{height - 10}" text-anchor="middle" font-size="12">t [s]</text>')

    # thin dense logs to at most ~2 points per pixel column
    stride = max(1, len(t) // (2 * pw))
    for i, (name, s) in enumerate(zip(fields, series)):
        idx = np.unique(np.r_[np.arange(0, len(t), stride), len(t) - 1])
        pts = " ".join(f"{_n(X(t[j]))},{_n(Y(s[j]))}" for j in idx)
        color = PALETTE[i % len(PALETTE)]
        out.append(f'<polyline class="series" data-field="{name}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5" points="{pts}"/>')
    legend = ['<g class="legend" font-size="12">']
    for i, name in enumerate(fields):
        y = top + 10 + 16 * i
        color = PALETTE[i % len(PALETTE)]
        legend.append(f'<line x1="{left + pw - 110}" y1="{y}" x2="{left + pw - 90}" y2="{y}" '
                      f'stroke="{color}" stroke-width="2"/>'
                      f'<text x="{left + pw - 85}" y="{y}" dominant-baseline="middle">{name}</text>')
    legend.append("</g>")
    out.extend(legend)
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n")


# -- animation frames ----------------------------------------------------------

# Drawing scales.  Lengths in metres map to pixels by PX_PER_M; force arrows
# are FORCE_PX_PER_N long per newton; torque arcs sweep TORQUE_RAD_PER_NM
# radians per newton-metre, capped just short of a full circle.
PX_PER_M = 200.0
FORCE_PX_PER_N = 0.25
TORQUE_RAD_PER_NM = math.radians(0.5)
MAX_ARC = math.radians(330)
FRAME_W, FRAME_H = 600, 400
GROUND_Y = 340.0
WHEEL_FORCES = ("F_W_mot", "F_W_g", "F_W")
SADDLE_TORQUES = ("tau_S_g", "tau_S_W", "tau_S")
COLORS = {"F_W_mot": "#e06060", "F_W_g": "#e06060", "F_W": "#b00000",
          "tau_S_g": "#e06060", "tau_S_W": "#e06060", "tau_S": "#b00000"}


def frame_geometry(record, p: Params = DEFAULT_PARAMS) -> dict:
    """Drawing primitives for one frame in screen coordinates (y down).

    The view follows the wheel, which sits at the horizontal centre.  The
    rod is drawn ``r_S`` long and rotated by ``theta`` counter-clockwise from
    vertical.  Arcs are described by centre, radius, start angle and signed
    sweep, with angles measured counter-clockwise from the +x axis as seen
    on screen.  Zero-magnitude forces and torques produce no primitive.
    """
    cx = FRAME_W / 2
    r = p.r_W * PX_PER_M
    cy = GROUND_Y - r
    th = record.state.theta
    length = p.r_S * PX_PER_M
    top = (cx - length * math.sin(th), cy - length * math.cos(th))
    com = (cx - p.r_com * PX_PER_M * math.sin(th), cy - p.r_com * PX_PER_M * math.cos(th))
    geo = {
        "ground": ((0.0, GROUND_Y), (float(FRAME_W), GROUND_Y)),
        "wheel": ((cx, cy), r),
        "rod": ((cx, cy), top),
        "com": com,
        "arrows": {},
        "arcs": {},
    }
    for i, name in enumerate(WHEEL_FORCES):
        f = getattr(record.forces, name)
        if f != 0:
            y = cy + (i - 1) * 0.35 * r
            geo["arrows"][name] = ((cx, y), (cx + f * FORCE_PX_PER_N, y))
    # rod direction on screen, counter-clockwise from +x
    rod_angle = math.pi / 2 + th
    for i, name in enumerate(SADDLE_TORQUES):
        tq = getattr(record.forces, name)
        if tq != 0:
            sweep = math.copysign(min(abs(tq) * TORQUE_RAD_PER_NM, MAX_ARC), tq)
            geo["arcs"][name] = (com, 18.0 + 10.0 * i, rod_angle, sweep)
    return geo


def _arrow(name, a, b) -> str:
    (x1, y1), (x2, y2) = a, b
    d = math.copysign(6.0, x2 - x1)
    head = f"{_n(x2)},{_n(y2)} {_n(x2 - d)},{_n(y2 - 4)} {_n(x2 - d)},{_n(y2 + 4)}"
    width = 3 if name == "F_W" else 1.5
    return (f'<g class="force" data-name="{name}" stroke="{COLORS[name]}" fill="{COLORS[name]}">'
            f'<line x1="{_n(x1)}" y1="{_n(y1)}" x2="{_n(x2)}" y2="{_n(y2)}" stroke-width="{width}"/>'
            f'<polygon points="{head}"/></g>')


def _arc(name, centre, radius, start, sweep) -> str:
    (cx, cy) = centre
    # screen y points down, so a counter-clockwise angle a sits at (cos a, -sin a)
    x1, y1 = cx + radius * math.cos(start), cy - radius * math.sin(start)
    end = start + sweep
    x2, y2 = cx + radius * math.cos(end), cy - radius * math.sin(end)
    large = 1 if abs(sweep) > math.pi else 0
    flag = 0 if sweep > 0 else 1
    dash = ' stroke-dasharray="4 3"' if name == "tau_S_W" else ""
    width = 3 if name == "tau_S" else 1.5
    return (f'<path class="torque" data-name="{name}" fill="none" stroke="{COLORS[name]}" '
            f'stroke-width="{width}"{dash} d="M {_n(x1)} {_n(y1)} A {_n(radius)} {_n(radius)} 0 '
            f'{large} {flag} {_n(x2)} {_n(y2)}"/>'
            f'<circle cx="{_n(x2)}" cy="{_n(y2)}" r="2.5" fill="{COLORS[name]}"/>')


def frame_svg(record, p: Params = DEFAULT_PARAMS) -> str:
    g = frame_geometry(record, p)
    (gx1, gy1), (gx2, gy2) = g["ground"]
    (wx, wy), wr = g["wheel"]
    (rx1, ry1), (rx2, ry2) = g["rod"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{FRAME_W}" height="{FRAME_H}" '
        f'viewBox="0 0 {FRAME_W} {FRAME_H}" data-format-version="{FORMAT_VERSION}">',
        f'<rect x="0" y="0" width="{FRAME_W}" height="{FRAME_H}" fill="white"/>',
        f'<line class="ground" x1="{_n(gx1)}" y1="{_n(gy1)}" x2="{_n(gx2)}" y2="{_n(gy2)}" stroke="black" stroke-width="2"/>',
        f'<circle class="wheel" cx="{_n(wx)}" cy="{_n(wy)}" r="{_n(wr)}" fill="none" stroke="#333" stroke-width="4"/>',
        f'<line class="rod" x1="{_n(rx1)}" y1="{_n(ry1)}" x2="{_n(rx2)}" y2="{_n(ry2)}" stroke="#555" stroke-width="6"/>',
        f'<circle class="com" cx="{_n(g["com"][0])}" cy="{_n(g["com"][1])}" r="5" fill="#555"/>',
    ]
    parts += [_arrow(n, *g["arrows"][n]) for n in WHEEL_FORCES if n in g["arrows"]]
    parts += [_arc(n, *g["arcs"][n]) for n in SADDLE_TORQUES if n in g["arcs"]]
    s = record.state
    parts.append(
        f'<text x="10" y="20" font-size="13">t={fmt(record.t)} s  x_W={fmt(s.x_W)} m  v_W={fmt(s.v_W)} m/s  '
        f'theta={fmt(s.theta)} rad  {record.uni_loc.value}/{record.motor_loc.value}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_frames(records, every_n: int, directory, p: Params = DEFAULT_PARAMS) -> list[Path]:
    """Write ``frame_00000.svg`` ... for every ``every_n``-th record."""
    if every_n < 1:
        raise ValueError(f"every_n must be >= 1, got {every_n}")
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for i, r in enumerate(records[::every_n]):
        path = directory / f"frame_{i:05d}.svg"
        path.write_text(frame_svg(r, p))
        written.append(path)
    return written
