"""Scenario files shipped with the package.

``balance``       lean of 0.1 rad, rider wants to stand still, PID control
``speed_step``    upright start, rider asks for 2 m/s at t = 5 s
``uncontrolled``  lean of 0.01 rad with no motor torque

The two PID scenarios use a 150 N m motor: with 60 N m no admissible
torque can stop a 0.1 rad lean from growing.
"""

from importlib import resources

NAMES = ("balance", "speed_step", "uncontrolled")


def path(name: str):
    if name not in NAMES:
        raise KeyError(f"no shipped scenario {name!r}; choose from {NAMES}")
    return resources.files(__name__).joinpath(f"{name}.json")


def load(name: str):
    from ..io.scenario import parse_scenario
    import json

    return parse_scenario(json.loads(path(name).read_text()))
