"""
An affine model for reachability
================================

Verification tools want affine flows.  We fit planes to the two nonlinear
fields over the operating window, look at how wrong they are, and write a
SpaceEx model with one location per motor mode plus ``fallen``.
"""

import math
from pathlib import Path

import numpy as np

from unisim.io import export_verification_model, read_spaceex_xml
from unisim.linearize import assemble_bounded_model, fit_affine, grid, plane
from unisim.physics import DEFAULT_PARAMS, wheel_force_and_saddle_torque

out = Path("demo_output")
out.mkdir(exist_ok=True)
p = DEFAULT_PARAMS

m = fit_affine(p)
print("F_W2  ~ %.4g + %.4g theta + %.4g tau" % m.f2_coeffs)
print("tau_S ~ %.4g + %.4g theta + %.4g tau" % m.tauS_coeffs)

# Residuals relative to the size of each field on the fitting grid.
th, tq = grid(m.theta_range, m.tau_range, m.grid_n)
f2, ts = wheel_force_and_saddle_torque(th, tq, p)
print(f"F_W2 residual {m.residual_max_f2:.3f} N = {m.residual_max_f2 / np.abs(f2).max():.1%} of max")
print(f"tau_S residual {m.residual_max_tauS:.2f} N m = {m.residual_max_tauS / np.abs(ts).max():.1%} of max")

# The error is worst at the window's edges, where sin and cos bend away.
worst = np.argmax(np.abs(plane(m.tauS_coeffs, th, tq) - ts))
print(f"worst tau_S error at theta={th[worst]:.3f}, tau={tq[worst]:.1f}")

# Narrower windows fit better; this is the trade-off a verifier has to make.
for half in (0.05, 0.2, math.pi / 8, math.pi / 4):
    n = fit_affine(p, (-half, half))
    print(f"window +-{half:.3f} rad: tau_S residual {n.residual_max_tauS:8.3f} N m")

model = assemble_bounded_model(m, p, initial_theta=0.05)
files = export_verification_model(model, out / "unicycle.xml")
sx = read_spaceex_xml(files["xml"])
print("locations:", ", ".join(sx["locations"]))
print("transitions:", len(sx["transitions"]))
print(files["cfg"].read_text())
