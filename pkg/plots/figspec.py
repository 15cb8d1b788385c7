"""Shared plumbing for the figure scripts.

The scripts are read-only consumers of the CSV files written by the
``ldgm curve`` command: byte-identical CSV in, pixel-identical image out.
Each figure id fixes its required CSV columns and axis ranges.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

REQUIRED_COLUMNS = {
    "fig-U": ("variant", "c", "D", "R", "w"),
    "fig-RD": ("variant", "c", "D", "R"),
    "fig-V": ("variant", "c", "dv", "dc", "D", "R", "w"),
}

AXIS_RANGES = {
    "fig-U": ((0.0, 0.5), (0.0, 0.6)),
    "fig-RD": ((0.0, 0.5), (0.0, 1.2)),
    "fig-V": ((0.0, 0.5), (0.0, 0.6)),
}

_PNG_METADATA = {"Software": "ldgm-plots"}


@dataclass
class FigureSpec:
    """Input CSV, figure id, fixed axis ranges, output image path."""

    csv_path: str
    figure_id: str
    out_path: str
    x_range: tuple[float, float] = field(default=None)
    y_range: tuple[float, float] = field(default=None)

    def __post_init__(self):
        if self.figure_id not in REQUIRED_COLUMNS:
            raise ValueError(f"unknown figure id {self.figure_id!r}")
        if self.x_range is None:
            self.x_range = AXIS_RANGES[self.figure_id][0]
        if self.y_range is None:
            self.y_range = AXIS_RANGES[self.figure_id][1]


def load_rows(spec: FigureSpec) -> list[dict]:
    """Read the CSV (skipping '#' comment lines) and check the schema."""
    with open(spec.csv_path) as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.DictReader(lines))
    if not rows:
        raise ValueError(f"{spec.csv_path}: no data rows")
    missing = [col for col in REQUIRED_COLUMNS[spec.figure_id]
               if col not in rows[0]]
    if missing:
        raise ValueError(f"{spec.csv_path}: missing columns {missing} "
                         f"required by {spec.figure_id}")
    return rows


def new_axes(spec: FigureSpec, xlabel: str, ylabel: str, title: str):
    fig, ax = plt.subplots(figsize=(6.0, 4.5), dpi=120)
    ax.set_xlim(*spec.x_range)
    ax.set_ylim(*spec.y_range)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return fig, ax


def save(fig, spec: FigureSpec) -> None:
    # Fixed metadata keeps the PNG byte-stable across re-runs.
    fig.savefig(spec.out_path, format="png", metadata=_PNG_METADATA)
    plt.close(fig)


def as_float(row: dict, key: str) -> float:
    return float(row[key])
