"""Grid sweeps over PID gains with one summary row per run."""

from __future__ import annotations

import csv
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .automaton import UnicycleLocation
from .controller import PidController
from .io.csvlog import fmt
from .simulation import LogRecord, run

SETTLE_THETA = 0.01
SUMMARY_COLUMNS = ("kp", "ki", "kd", "fell", "fall_time", "max_abs_theta", "settling_time", "speed_error")


@dataclass(frozen=True)
class RunSummary:
    kp: float
    ki: float
    kd: float
    fell: bool
    fall_time: float          # nan when the run did not fall
    max_abs_theta: float
    settling_time: float      # first t after which |theta| < SETTLE_THETA for good; nan if never
    speed_error: float        # |v_W - drive_intent| on the last record


def summarize(records: list[LogRecord], kp: float, ki: float, kd: float) -> RunSummary:
    last = records[-1]
    fell = last.uni_loc is UnicycleLocation.FALLEN
    settle = math.nan
    if not fell:
        settle = records[0].t
        for r in records:
            if abs(r.state.theta) >= SETTLE_THETA:
                settle = math.nan
            elif math.isnan(settle):
                settle = r.t
    return RunSummary(
        kp, ki, kd, fell,
        last.t if fell else math.nan,
        max(abs(r.state.theta) for r in records),
        settle,
        abs(last.state.v_W - last.drive_intent),
    )


def _one(job) -> RunSummary:
    scenario, (kp, ki, kd) = job
    ctl = PidController(replace(scenario.pid, kp=kp, ki=ki, kd=kd))
    records = run(scenario.sim, scenario.params, scenario.profile, ctl)
    return summarize(records, kp, ki, kd)


def sweep(scenario, kps, kis, kds, jobs: int = 1) -> list[RunSummary]:
    """Run ``scenario`` for every gain triple in the Cartesian grid, in grid order."""
    grid = [(scenario, g) for g in itertools.product(kps, kis, kds)]
    if jobs <= 1:
        return [_one(j) for j in grid]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_one, grid))


def write_summary_csv(rows: list[RunSummary], path) -> None:
    def cell(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        return "" if math.isnan(v) else fmt(v)

    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_COLUMNS)
        for r in rows:
            w.writerow([cell(getattr(r, c)) for c in SUMMARY_COLUMNS])
