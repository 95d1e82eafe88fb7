"""CSV trajectory logs.

Column order is fixed::

    t, x_W, v_W, theta, omega, drive_intent, request, tau_W_mot,
    uni_loc, motor_loc, m_W, F_W_mot, tau_S_g, F_W_g, F_W, beta,
    F_W1, F_W2, tau_S_W, tau_S

Numbers are written in positional notation with 9 significant digits.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from ..automaton import MotorLocation, UnicycleLocation
from ..physics import FORCE_FIELDS, ForceBreakdown, State
from ..simulation import LogRecord

STATE_COLUMNS = ("x_W", "v_W", "theta", "omega")
COLUMNS = ("t",) + STATE_COLUMNS + ("drive_intent", "request", "tau_W_mot", "uni_loc", "motor_loc") + FORCE_FIELDS
HEADER = ",".join(COLUMNS)
NUMERIC_COLUMNS = tuple(c for c in COLUMNS if c not in ("uni_loc", "motor_loc"))


def fmt(x: float) -> str:
    if x == 0:
        return "0"
    return np.format_float_positional(x, precision=9, unique=False, fractional=False, trim="-")


def record_row(r: LogRecord) -> dict:
    row = {"t": r.t, "drive_intent": r.drive_intent, "request": r.request, "tau_W_mot": r.tau_W_mot,
           "uni_loc": r.uni_loc.value, "motor_loc": r.motor_loc.value}
    for c in STATE_COLUMNS:
        row[c] = getattr(r.state, c)
    for c in FORCE_FIELDS:
        row[c] = getattr(r.forces, c)
    return row


def write_log_csv(records, path) -> None:
    if not records:
        raise ValueError("cannot write an empty log")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in records:
            row = record_row(r)
            w.writerow([row[c] if c in ("uni_loc", "motor_loc") else fmt(row[c]) for c in COLUMNS])


def read_log_csv(path) -> list[LogRecord]:
    """Inverse of :func:`write_log_csv`, up to the 9-digit rounding."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != COLUMNS:
            raise ValueError(f"{path}: unexpected CSV header")
        out = []
        for raw in reader:
            row = dict(zip(COLUMNS, raw))
            num = {c: float(row[c]) for c in NUMERIC_COLUMNS}
            out.append(LogRecord(
                t=num["t"],
                state=State(*(num[c] for c in STATE_COLUMNS)),
                drive_intent=num["drive_intent"],
                request=num["request"],
                tau_W_mot=num["tau_W_mot"],
                uni_loc=UnicycleLocation(row["uni_loc"]),
                motor_loc=MotorLocation(row["motor_loc"]),
                forces=ForceBreakdown(*(num[c] for c in FORCE_FIELDS)),
            ))
    return out


def column(records, name: str) -> np.ndarray:
    """One numeric log column as an array."""
    if name not in NUMERIC_COLUMNS:
        raise KeyError(f"unknown numeric log column {name!r}; choose from {', '.join(NUMERIC_COLUMNS)}")
    rows = (record_row(r)[name] for r in records)
    return np.fromiter(rows, dtype=float)
