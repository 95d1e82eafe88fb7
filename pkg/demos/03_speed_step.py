"""
Riding off
==========

The rider asks for 2 m/s at t = 5 s.  The controller's error mixes the
lean with the speed shortfall, so to accelerate it first lets the rider
lean forward and then drives the wheel under them.
"""

from dataclasses import replace
from pathlib import Path

import numpy as np

from unisim import scenarios
from unisim.controller import PidController
from unisim.io import plot_svg
from unisim.io.csvlog import column
from unisim.simulation import run

out = Path("demo_output")
out.mkdir(exist_ok=True)

sc = scenarios.load("speed_step")
recs = run(sc.sim, sc.params, sc.profile, sc.controller())
t, v, theta = column(recs, "t"), column(recs, "v_W"), column(recs, "theta")

for when in (4.9, 5.5, 7.0, 10.0, 15.0, 20.0, 30.0):
    i = int(np.searchsorted(t, when - 1e-9))
    print(f"t={t[i]:5.1f} s  v_W={v[i]:6.3f} m/s  theta={theta[i]: .4f} rad")

late = t >= 20.0
print(f"max |v_W - 2| after 20 s: {np.max(np.abs(v[late] - 2.0)):.4f} m/s")
print(f"distance covered: {recs[-1].state.x_W:.1f} m")
plot_svg(recs, ["v_W", "drive_intent"], out / "speed_step.svg")
plot_svg(recs, ["theta"], out / "speed_step_theta.svg")

# A harder push: the intent factor sets how far the rider is allowed to
# lean per m/s of shortfall.  Too much and the motor saturates and the
# rider falls.
for f in (0.02, 0.05, 0.08):
    r = run(sc.sim, sc.params, sc.profile, PidController(replace(sc.pid, intent_factor=f)))
    print(f"intent_factor={f:.2f}: {r[-1].uni_loc.value} at t={r[-1].t:g} s, final v_W={r[-1].state.v_W:.3f}")
