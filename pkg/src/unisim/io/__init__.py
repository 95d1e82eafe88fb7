"""File formats: scenarios (JSON), logs (CSV), plots and frames (SVG), SpaceEx export."""

from .csvlog import COLUMNS, HEADER, read_log_csv, write_log_csv
from .scenario import Scenario, ScenarioError, dumps_scenario, load_params, load_scenario, save_scenario
from .spaceex import export_verification_model, read_spaceex_xml
from .svg import frame_geometry, plot_svg, render_frames

__all__ = [
    "COLUMNS", "HEADER", "read_log_csv", "write_log_csv",
    "Scenario", "ScenarioError", "dumps_scenario", "load_params", "load_scenario", "save_scenario",
    "export_verification_model", "read_spaceex_xml",
    "frame_geometry", "plot_svg", "render_frames",
]
