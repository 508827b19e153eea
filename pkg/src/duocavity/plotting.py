"""Figure rendering for sweep results.

CSV stays the authoritative artifact; these matplotlib renderings are a
convenience written next to it. Single-axis sweeps become line charts
(one line per family member), two-axis sweeps a heat map.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .params import DISPLAY_UNITS
from .sweep import SweepResult


def render_sweep(result: SweepResult, path) -> None:
    spec = result.spec
    if len(spec.axes) == 1:
        _render_lines(result, path)
    else:
        _render_heatmap(result, path)


def _render_lines(result: SweepResult, path) -> None:
    spec = result.spec
    axis = spec.axes[0]
    axis_key = DISPLAY_UNITS[axis.name].key
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    family_values = spec.family_values if spec.family else (None,)
    n_axis = axis.points
    for i, fam in enumerate(family_values):
        chunk = result.records[i * n_axis : (i + 1) * n_axis]
        xs = [rec.axis_values[0] for rec in chunk]
        ys = [rec.E_N for rec in chunk]  # nan at unstable points leaves gaps
        label = (
            f"{DISPLAY_UNITS[spec.family].key} = {fam:g}" if spec.family else None
        )
        ax.plot(xs, ys, label=label)
    ax.set_xlabel(axis_key)
    ax.set_ylabel("E_N")
    if spec.label:
        ax.set_title(spec.label)
    if spec.family:
        ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _render_heatmap(result: SweepResult, path) -> None:
    spec = result.spec
    ax1, ax2 = spec.axes
    grid = np.full((ax1.points, ax2.points), np.nan)
    for rec in result.records:
        i, j = rec.index[-2], rec.index[-1]
        grid[i, j] = rec.E_N
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    mesh = ax.pcolormesh(ax1.values(), ax2.values(), grid.T, shading="auto")
    fig.colorbar(mesh, ax=ax, label="E_N")
    ax.set_xlabel(DISPLAY_UNITS[ax1.name].key)
    ax.set_ylabel(DISPLAY_UNITS[ax2.name].key)
    if spec.label:
        ax.set_title(spec.label)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
