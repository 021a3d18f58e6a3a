"""Noise-injection sweep: distances of each set, padded with m noise columns.

Reproduces the validation experiment shape: every input set is measured
against S1 while progressively adding random attributes, alongside a
meaningful baseline (S2 itself) and a pure-noise baseline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calibrate import DEFAULT_SEED, DEFAULT_TRIALS, derive_seed, gen_noise
from .core import AttributeMatrix, MeaningfulSplit, concat_columns
from .solver import DEFAULT_MAX_ITER, DEFAULT_TOL, distance
from .util import ordered_map

MEANINGFUL_LABEL = "MeaningfulAttributeSet"
NOISE_LABEL = "NonMeaningfulAttributeSet"


@dataclass(frozen=True)
class SweepResult:
    """Per-set, per-kind averaged distances over the added-noise grid."""

    labels: tuple[str, ...]
    kinds: tuple[str, ...]
    grid: tuple[int, ...]
    values: dict[tuple[str, str], tuple[float, ...]]
    trials: int
    seed: int

    def row(self, label: str, kind: str) -> tuple[float, ...]:
        return self.values[(label, kind)]


def compute_sweep(
    split: MeaningfulSplit,
    d_sets: list[tuple[str, AttributeMatrix]],
    grid=(0, 8, 16, 32, 64, 128, 256),
    trials: int = DEFAULT_TRIALS,
    kinds=("cvx", "jp"),
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SweepResult:
    """Average distance of each set plus m noise columns to S1, over the grid.

    The meaningful (S2) and pure-noise baselines are always included; row
    order is baselines around the inputs, independent of scheduling.
    """
    grid = tuple(int(m) for m in grid)
    if any(b <= a for a, b in zip(grid, grid[1:])) or not grid:
        raise ValueError("grid must be nonempty and strictly ascending")
    s1, s2 = split.s1, split.s2
    n = s1.n_images
    noise_base = gen_noise(n, s2.n_attrs, derive_seed(seed, "baseline"))
    rows = [(MEANINGFUL_LABEL, s2)]
    rows += list(d_sets)
    rows.append((NOISE_LABEL, noise_base))

    def one_cell(task):
        label, base, kind, m = task
        if m == 0:
            return distance(kind, s1, base, tol, max_iter).value
        vals = [
            distance(
                kind,
                s1,
                concat_columns(
                    base, gen_noise(n, m, derive_seed(seed, "noise", label, m, t))
                ),
                tol,
                max_iter,
            ).value
            for t in range(trials)
        ]
        return float(np.mean(vals))

    tasks = [
        (label, base, kind, m)
        for label, base in rows
        for kind in kinds
        for m in grid
    ]
    flat = ordered_map(one_cell, tasks)
    values = {}
    i = 0
    for label, _base in rows:
        for kind in kinds:
            values[(label, kind)] = tuple(flat[i : i + len(grid)])
            i += len(grid)
    return SweepResult(
        labels=tuple(label for label, _ in rows),
        kinds=tuple(kinds),
        grid=grid,
        values=values,
        trials=trials,
        seed=seed,
    )


def sweep_table(result: SweepResult) -> str:
    """Plot-ready tab-delimited long-format table with a header row."""
    lines = ["set\tkind\tm\tmean_delta"]
    for label in result.labels:
        for kind in result.kinds:
            for m, v in zip(result.grid, result.row(label, kind)):
                lines.append(f"{label}\t{kind}\t{m}\t{v!r}")
    return "\n".join(lines) + "\n"
