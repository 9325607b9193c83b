"""
Plot-ready output for sweeps: a comma-separated data file and a gnuplot script.
"""

from __future__ import annotations

import csv
import os
import shutil
import subprocess
from pathlib import Path

from ..exceptions import SweepError
from ..model.spec import Frozen
from .types import SweepResult

STATS = ("mean", "stddev", "min", "max")


class PlotFiles(Frozen):
    data: Path
    script: Path
    image: Path


def quoted(text: str) -> str:
    """A gnuplot single-quoted string; embedded quotes are doubled."""
    return "'" + text.replace("'", "''") + "'"


def header(sr: SweepResult) -> list[str]:
    cols = [sr.swept_param or "param"]
    for v in sr.variants:
        cols.extend(f"{v}_{s}" for s in STATS)
    return cols


def emit_plot_data(sr: SweepResult, directory: Path, stem: str | None = None) -> PlotFiles:
    if not sr.points:
        raise SweepError("sweep has no points to plot")
    directory.mkdir(parents=True, exist_ok=True)
    stem = stem or f"{sr.spec_id}-{sr.swept_param}"
    data = directory / f"{stem}.csv"
    script = directory / f"{stem}.gp"
    image = directory / f"{stem}.svg"

    with data.open("w", encoding="utf-8", newline="") as f:
        cols = header(sr)
        f.write("#" + ",".join(cols) + "\n")
        w = csv.writer(f, lineterminator="\n")
        for p in sr.points:
            row = [repr(p.value)]
            for v in sr.variants:
                s = p.summaries[v]
                row.extend(repr(getattr(s, stat)) for stat in STATS)
            w.writerow(row)

    lines = [
        f"# {sr.spec_id}: wall time over {sr.swept_param}",
        'set datafile separator ","',
        "set terminal svg size 900,600",
        f"set output {quoted(image.name)}",
        f"set xlabel {quoted(sr.swept_param or 'param')}",
        "set ylabel 'wall time [s]'",
        "set key left top",
        "set grid",
    ]
    if sr.log_scale:
        lines.append("set logscale x")
    plots = []
    for i, v in enumerate(sr.variants):
        mean_col = 2 + i * len(STATS)
        src = quoted(data.name) if i == 0 else "''"
        plots.append(f"{src} using 1:{mean_col}:{mean_col + 1} with yerrorlines title {quoted(v)}")
    lines.append("plot " + ", \\\n     ".join(plots))
    script.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return PlotFiles(data=data, script=script, image=image)


def find_gnuplot() -> Path | None:
    """
    Find the gnuplot binary:
    1. METIBENCH_GNUPLOT environment variable
    2. System PATH
    """
    if env_path := os.environ.get("METIBENCH_GNUPLOT"):
        candidate = Path(env_path)
        if candidate.is_file():
            return candidate
    found = shutil.which("gnuplot")
    return Path(found) if found else None


def render_plot(files: PlotFiles) -> Path:
    gnuplot = find_gnuplot()
    if gnuplot is None:
        raise SweepError("gnuplot not found; install it or set METIBENCH_GNUPLOT")
    proc = subprocess.run(
        [str(gnuplot), files.script.name],
        cwd=files.script.parent,
        capture_output=True,
        text=True,
        encoding="utf-8",
        errors="replace",
    )
    if proc.returncode != 0:
        raise SweepError(f"gnuplot failed with exit code {proc.returncode}\n{proc.stderr.strip()}")
    return files.image
