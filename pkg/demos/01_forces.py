"""
Where the forces go
===================

A walk through one evaluation of the model: the motor torque and gravity
both push the wheel horizontally, that push is shared between wheel and
saddle, and the saddle's share turns into a torque about its pivot.
"""

import math

import numpy as np

from unisim.physics import BETA_CONSTRAINT, DEFAULT_PARAMS, FORCE_FIELDS, State, breakdown, derivatives

p = DEFAULT_PARAMS
print("parameters:", p)

# The rider leans 0.1 rad counter-clockwise while the motor gives 10 N m.
s = State(theta=0.1)
fb = breakdown(s, 10.0, p)
for name in FORCE_FIELDS:
    print(f"  {name:8s} {getattr(fb, name):12.6f}")

# Only a small slice of the horizontal force reaches the wheel, because the
# saddle is much heavier than the wheel.
print(f"wheel keeps {fb.F_W2 / fb.F_W:.1%} of F_W, saddle takes {fb.F_W1 / fb.F_W:.1%}")

# The alternative split ratio keeps more force on the wheel.
alt = breakdown(s, 10.0, p.with_(beta_model=BETA_CONSTRAINT))
print(f"constraint split: beta={alt.beta:.3f} vs printed {fb.beta:.3f}")

# How much counter-torque does it take to stop the lean from growing?
# tau_S is affine in tau at fixed theta, so two evaluations are enough.
for theta in (0.02, 0.05, 0.1, 0.2):
    a = derivatives(State(theta=theta), 0.0, p).domega
    b = derivatives(State(theta=theta), -1.0, p).domega
    needed = a / (a - b)
    print(f"theta={theta:4.2f} rad needs tau < {-needed:7.1f} N m to start recovering")

# With the 60 N m motor, leans beyond about 0.08 rad can no longer be
# caught, which is why the balancing demos use a 150 N m motor.
thetas = np.linspace(0.0, math.pi / 4, 2001)
tau = -p.tau_max
ok = [derivatives(State(theta=t), tau, p).domega <= 0 for t in thetas]
print(f"largest recoverable lean at tau_max={p.tau_max:g}: {thetas[np.argmin(ok)]:.4f} rad")
