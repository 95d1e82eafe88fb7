"""Pedal-generator unicycle: dynamics, hybrid model, control, simulation and linearization."""
