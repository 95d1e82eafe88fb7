"""
Falling over, and not
=====================

Without control the upright rider is an inverted pendulum and falls in well
under a second.  The shipped PID catches a 0.1 rad lean when the motor can
deliver 150 N m.
"""

from pathlib import Path

from unisim import scenarios
from unisim.io import plot_svg, render_frames, write_log_csv
from unisim.simulation import run

out = Path("demo_output")
out.mkdir(exist_ok=True)

# Uncontrolled: the smallest lean grows until the fall guard fires.
sc = scenarios.load("uncontrolled")
recs = run(sc.sim, sc.params, sc.profile, sc.controller())
last = recs[-1]
print(f"uncontrolled: {last.uni_loc.value} at t={last.t:.3f} s, theta={last.state.theta:.4f} rad")
plot_svg(recs, ["theta", "omega"], out / "uncontrolled.svg")

# Controlled: note the sign of the gains.  A positive motor torque tips the
# saddle further, so the controller pushes against the lean.
sc = scenarios.load("balance")
print("gains:", sc.pid)
recs = run(sc.sim, sc.params, sc.profile, sc.controller())
late = max(abs(r.state.theta) for r in recs if r.t >= 5.0)
print(f"balance: {recs[-1].uni_loc.value} after {recs[-1].t:g} s, max |theta| after 5 s = {late:.2e} rad")
print(f"peak motor torque {max(abs(r.tau_W_mot) for r in recs):.1f} N m, "
      f"saturated for {sum(r.motor_loc.value != 'normal' for r in recs)} steps")

write_log_csv(recs, out / "balance.csv")
plot_svg(recs, ["theta", "omega"], out / "balance.svg")
plot_svg(recs, ["request", "tau_W_mot"], out / "balance_torque.svg")

# The first second, one frame every 50 ms.
frames = render_frames(recs[:1000], 50, out / "balance_frames", sc.params)
print(f"wrote {len(frames)} frames to {out / 'balance_frames'}")
