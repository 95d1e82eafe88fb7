"""Command-line entry point ``unisim``.

Exit codes: 0 success, 1 invalid input or usage, 2 model fault.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from .io.csvlog import read_log_csv, write_log_csv
from .io.scenario import ScenarioError, load_params, load_scenario
from .io.spaceex import export_verification_model
from .io.svg import plot_svg, render_frames
from .linearize import AffineModel, assemble_bounded_model, fit_affine
from .physics import ModelFault
from .simulation import SimulationFault, run
from .sweep import sweep, write_summary_csv

EXIT_OK, EXIT_INVALID, EXIT_FAULT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _fields(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="unisim", description="Pedal-generator unicycle simulator and verification helper.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="run a scenario and write the log CSV")
    s.add_argument("--scenario", required=True)
    s.add_argument("--out", help="log CSV (default: outputs.log from the scenario)")
    s.add_argument("--plot", help="also write an SVG plot")
    s.add_argument("--fields", type=_fields, help="comma-separated columns to plot")
    s.add_argument("--frames", help="directory for SVG animation frames")
    s.add_argument("--every", type=int, help="render every N-th record")

    li = sub.add_parser("linearize", help="fit affine surrogates and write the model JSON")
    li.add_argument("--params", required=True, help="parameter JSON or scenario JSON")
    li.add_argument("--out", required=True)
    li.add_argument("--theta-range", type=float, nargs=2, default=(-math.pi / 4, math.pi / 4), metavar=("LO", "HI"))
    li.add_argument("--grid", type=int, default=101)
    li.add_argument("--omega-bound", type=float, default=10.0)
    li.add_argument("--v-bound", type=float, default=15.0)

    ex = sub.add_parser("export", help="write SpaceEx XML/CFG and model JSON from an affine model")
    ex.add_argument("--model", required=True, help="affine model JSON from `linearize`")
    ex.add_argument("--out", required=True, help="output path; .xml/.cfg/.json siblings are written")
    ex.add_argument("--initial-theta", type=float, default=0.0)

    sw = sub.add_parser("sweep", help="run a scenario over a PID gain grid",
                        epilog="Negative gain lists need the --kp=-2500,-2000 form.")
    sw.add_argument("--scenario", required=True)
    sw.add_argument("--kp", type=_floats, required=True)
    sw.add_argument("--ki", type=_floats, required=True)
    sw.add_argument("--kd", type=_floats, required=True)
    sw.add_argument("--out", required=True)
    sw.add_argument("--jobs", type=int, default=1)

    pl = sub.add_parser("plot", help="plot columns of a log CSV")
    pl.add_argument("--log", required=True)
    pl.add_argument("--fields", type=_fields, default=["theta"])
    pl.add_argument("--out", required=True)
    return ap


def _simulate(a) -> int:
    scn = load_scenario(a.scenario)
    out = a.out or scn.outputs.log
    if not out:
        raise ScenarioError([("outputs.log", "no log path given (use --out)")], a.scenario)
    records = run(scn.sim, scn.params, scn.profile, scn.controller())
    write_log_csv(records, out)
    plot = a.plot or scn.outputs.plot
    if plot:
        plot_svg(records, a.fields or scn.outputs.plot_fields, plot)
    frames = a.frames or scn.outputs.frames
    if frames:
        render_frames(records, a.every or scn.outputs.frame_every, frames, scn.params)
    last = records[-1]
    print(f"{len(records)} records, t_end={last.t:g} s, final location {last.uni_loc.value}, "
          f"theta={last.state.theta:.6g} rad, v_W={last.state.v_W:.6g} m/s -> {out}")
    return EXIT_OK


def _linearize(a) -> int:
    from .automaton import Bounds

    p = load_params(a.params)
    m = fit_affine(p, tuple(a.theta_range), None, a.grid, Bounds(a.omega_bound, a.v_bound))
    Path(a.out).write_text(json.dumps(m.to_dict(), indent=2) + "\n")
    print(f"F_W2  ~ {m.f2_coeffs[0]:.9g} + {m.f2_coeffs[1]:.9g}*theta + {m.f2_coeffs[2]:.9g}*tau   "
          f"max residual {m.residual_max_f2:.6g} N")
    print(f"tau_S ~ {m.tauS_coeffs[0]:.9g} + {m.tauS_coeffs[1]:.9g}*theta + {m.tauS_coeffs[2]:.9g}*tau   "
          f"max residual {m.residual_max_tauS:.6g} N m")
    return EXIT_OK


def _export(a) -> int:
    path = Path(a.model)
    if not path.is_file():
        raise ScenarioError([("", f"file not found: {path}")], str(path))
    try:
        m = AffineModel.from_dict(json.loads(path.read_text()))
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError([("", f"not an affine model: {exc}")], str(path)) from exc
    model = assemble_bounded_model(m, m.params_snapshot, a.initial_theta)
    for kind, written in export_verification_model(model, a.out).items():
        print(f"{kind}: {written}")
    return EXIT_OK


def _sweep(a) -> int:
    scn = load_scenario(a.scenario)
    rows = sweep(scn, a.kp, a.ki, a.kd, jobs=a.jobs)
    write_summary_csv(rows, a.out)
    print(f"{len(rows)} runs, {sum(r.fell for r in rows)} fell -> {a.out}")
    return EXIT_OK


def _plot(a) -> int:
    path = Path(a.log)
    if not path.is_file():
        raise ScenarioError([("", f"file not found: {path}")], str(path))
    plot_svg(read_log_csv(path), a.fields, a.out)
    return EXIT_OK


COMMANDS = {"simulate": _simulate, "linearize": _linearize, "export": _export, "sweep": _sweep, "plot": _plot}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ScenarioError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except SimulationFault as exc:
        print(f"model fault: {exc} ({len(exc.records)} records before the fault)", file=sys.stderr)
        return EXIT_FAULT
    except ModelFault as exc:
        print(f"model fault: {exc}", file=sys.stderr)
        return EXIT_FAULT
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
