"""Figure rendering for sweep tables and metric reports.

Figures are written to files next to the delimited output; nothing here is
interactive.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .calibrate import MeaningfulnessReport
from .sweep import SweepResult


def plot_sweep(result: SweepResult, path) -> Path:
    """One panel per distance kind: mean delta vs added-noise count."""
    path = Path(path)
    n_kinds = len(result.kinds)
    fig, axes = plt.subplots(1, n_kinds, figsize=(5.5 * n_kinds, 4.0), squeeze=False)
    for ax, kind in zip(axes[0], result.kinds):
        for label in result.labels:
            ax.plot(result.grid, result.row(label, kind), marker="o", label=label)
        ax.set_xlabel("added noise attributes (m)")
        ax.set_ylabel(f"mean distance ({kind})")
        ax.set_title(f"noise sweep, {kind}")
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_report(report: MeaningfulnessReport, path) -> Path:
    """Calibration curves with the measured distance and its inversion point."""
    path = Path(path)
    kinds = list(report.results)
    fig, axes = plt.subplots(1, len(kinds), figsize=(5.5 * len(kinds), 4.0), squeeze=False)
    for ax, kind in zip(axes[0], kinds):
        res = report.results[kind]
        c = res.curve
        ax.plot(c.grid, c.mean_delta, "o-", label="curve mean")
        ax.plot(c.grid, c.isotonic_delta, "--", label="isotonic fit")
        ax.axhline(res.delta_d, color="tab:red", lw=1, label="measured distance")
        ax.axvline(res.g_star, color="tab:green", lw=1, label=f"g*={res.g_star:.1f}")
        sat = " (saturated)" if res.saturated else ""
        ax.set_title(f"{kind}: gamma={res.gamma:.1f}{sat}")
        ax.set_xlabel("added noise attributes (m)")
        ax.set_ylabel("mean distance")
        ax.legend(fontsize=7)
    fig.suptitle(f"gamma_tilde = {report.gamma_tilde:.1f}", y=1.0)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
