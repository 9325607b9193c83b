from .calibrate import Calibration, calibrate_iterations, iterations_for, target_time
from .plot import PlotFiles, emit_plot_data, find_gnuplot, render_plot
from .run import base_point, load_sweeps, run_sweep
from .types import SweepPoint, SweepResult

__all__ = [
    "Calibration",
    "PlotFiles",
    "SweepPoint",
    "SweepResult",
    "base_point",
    "calibrate_iterations",
    "emit_plot_data",
    "find_gnuplot",
    "iterations_for",
    "load_sweeps",
    "render_plot",
    "run_sweep",
    "target_time",
]
