"""Calibration of raw subspace distances into a 0-100 meaningfulness score.

The raw distances are hard to compare across distance kinds, so they are
calibrated against a family of reference sets built by progressively adding
random noise attributes to one half of the meaningful set.  The number of
noise attributes whose reference distance matches the measured distance is
inverted into the score: more noise needed means less meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import isotonic_regression

from .core import AttributeMatrix, MeaningfulSplit, concat_columns, split_meaningful
from .errors import OutOfRange
from .solver import DEFAULT_MAX_ITER, DEFAULT_TOL, cvx_residuals, distance
from .util import ordered_map

DEFAULT_GRID = (0, 1, 2, 4, 8, 16, 32, 64, 128, 256)
DEFAULT_TRIALS = 5
DEFAULT_SEED = 12345
DEGRADED_FRACTION = 0.10


def derive_seed(master: int, *parts) -> int:
    """Child seed for a named random stream, stable across runs and platforms."""
    tags = [p if isinstance(p, int) else _tag_int(p) for p in parts]
    ss = np.random.SeedSequence([int(master) & 0xFFFFFFFF, *tags])
    return int(ss.generate_state(1)[0])


def _tag_int(tag: str) -> int:
    return int.from_bytes(tag.encode("utf-8"), "big") % (2**32)


@dataclass(frozen=True)
class EvalConfig:
    """Everything needed to rerun an evaluation bit-identically."""

    ratio: float = 0.5
    seed: int = DEFAULT_SEED
    grid: tuple[int, ...] = DEFAULT_GRID
    trials: int = DEFAULT_TRIALS
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    zero_policy: str = "map_to_plus"
    kinds: tuple[str, ...] = ("cvx", "jp")
    include_full_delta: bool = False


@dataclass(frozen=True)
class InterpolationCurve:
    """Averaged reference distances, indexed by added-noise count m."""

    distance_kind: str
    grid: tuple[int, ...]
    mean_delta: tuple[float, ...]
    isotonic_delta: tuple[float, ...]
    trials: int
    seed: int
    nonconverged: int = 0
    total_solves: int = 0

    def __post_init__(self):
        if len(self.grid) != len(self.mean_delta) or len(self.grid) != len(
            self.isotonic_delta
        ):
            raise ValueError("curve arrays must have equal length")
        if self.grid[0] != 0:
            raise ValueError("curve grid must start at 0")
        if any(b < a for a, b in zip(self.isotonic_delta, self.isotonic_delta[1:])):
            raise ValueError("isotonic_delta must be nondecreasing")


@dataclass(frozen=True)
class CalibrationResult:
    """Inverted curve position and score for one distance kind."""

    g_star: float
    gamma: float
    saturated: bool
    delta_d: float
    curve: InterpolationCurve


@dataclass(frozen=True)
class MeaningfulnessReport:
    """Scores, curves and the full configuration echo for one evaluation."""

    gamma_cvx: float
    gamma_jp: float
    gamma_tilde: float
    results: dict[str, CalibrationResult]
    config: EvalConfig
    s1_size: int
    s2_size: int
    degraded: bool
    delta_full: dict[str, float] = field(default_factory=dict)


def gen_noise(n_images: int, m: int, seed: int) -> AttributeMatrix:
    """m i.i.d. uniform +-1 attribute columns; m = 0 is the empty marker."""
    rng = np.random.default_rng(seed)
    entries = (rng.integers(0, 2, size=(n_images, m)) * 2 - 1).astype(np.int8)
    return AttributeMatrix(entries)


def _curve_point(split, m, trials, kind, seed, tol, max_iter):
    """Mean distance (and non-convergence count) for one noise count m."""
    s1, s2 = split.s1, split.s2
    if m == 0:
        draws = [s2]
    else:
        draws = [
            concat_columns(s2, gen_noise(s1.n_images, m, derive_seed(seed, "noise", m, t)))
            for t in range(trials)
        ]
    values = []
    bad = 0
    total = 0
    for d in draws:
        if kind == "cvx":
            resid, conv = cvx_residuals(s1, d, tol, max_iter)
            values.append(float(resid.sum()) / d.n_attrs)
            bad += int((~conv).sum())
            total += d.n_attrs
        else:
            values.append(distance(kind, s1, d).value)
            total += d.n_attrs
    return float(np.mean(values)), bad, total


def interpolation_curve(
    split: MeaningfulSplit,
    grid=DEFAULT_GRID,
    trials: int = DEFAULT_TRIALS,
    kind: str = "cvx",
    seed: int = DEFAULT_SEED,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> InterpolationCurve:
    """Reference distances of S2 + m noise columns to S1, over a grid of m.

    m = 0 is a single deterministic evaluation; every other grid point is the
    mean over `trials` seeded noise draws.  The isotonic fit makes the curve
    invertible.
    """
    grid = tuple(int(m) for m in grid)
    if len(grid) == 0 or grid[0] != 0:
        raise ValueError("grid must start at 0")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly ascending")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    points = ordered_map(
        lambda m: _curve_point(split, m, trials, kind, seed, tol, max_iter), grid
    )
    mean_delta = tuple(p[0] for p in points)
    nonconverged = sum(p[1] for p in points)
    total = sum(p[2] for p in points)
    iso = isotonic_regression(np.asarray(mean_delta), increasing=True)
    return InterpolationCurve(
        distance_kind=kind,
        grid=grid,
        mean_delta=mean_delta,
        isotonic_delta=tuple(float(v) for v in iso.x),
        trials=trials,
        seed=seed,
        nonconverged=nonconverged,
        total_solves=total,
    )


def fit_invert(curve: InterpolationCurve, delta_d: float) -> tuple[float, bool]:
    """Smallest noise count whose curve value reaches delta_d.

    Piecewise-linear interpolation on the isotonic fit; out-of-range values
    clamp to the grid ends (the high end sets the saturated flag).
    """
    iso = curve.isotonic_delta
    grid = curve.grid
    if delta_d <= iso[0]:
        return 0.0, False
    if delta_d > iso[-1]:
        return float(grid[-1]), True
    for i in range(1, len(grid)):
        if iso[i] >= delta_d:
            lo, hi = iso[i - 1], iso[i]
            if hi == lo:
                return float(grid[i - 1]), False
            frac = (delta_d - lo) / (hi - lo)
            return float(grid[i - 1] + frac * (grid[i] - grid[i - 1])), False
    return float(grid[-1]), True  # unreachable given the checks above


def gamma_score(g_star: float, s2_size: int) -> float:
    """Calibrated meaningfulness in [0, 100]; 100 means no noise needed."""
    if s2_size < 1:
        raise OutOfRange(f"s2_size must be >= 1, got {s2_size}")
    if g_star < 0:
        raise OutOfRange(f"g_star must be nonnegative, got {g_star}")
    return (1.0 - g_star / (s2_size + g_star)) * 100.0


def combined_score(gamma_cvx: float, gamma_jp: float) -> float:
    """Equal-weight combination of the two calibrated scores."""
    for name, g in (("gamma_cvx", gamma_cvx), ("gamma_jp", gamma_jp)):
        if not 0.0 <= g <= 100.0:
            raise OutOfRange(f"{name}={g} outside [0, 100]")
    return 0.5 * gamma_cvx + 0.5 * gamma_jp


def pipeline_split(s: AttributeMatrix, config: EvalConfig = EvalConfig()) -> MeaningfulSplit:
    """The exact S1/S2 split evaluate_meaningfulness will use for this config."""
    return split_meaningful(s, config.ratio, derive_seed(config.seed, "split"))


def evaluate_meaningfulness(
    s: AttributeMatrix,
    d: AttributeMatrix,
    config: EvalConfig = EvalConfig(),
) -> MeaningfulnessReport:
    """Full pipeline: split S, build reference curves, invert, score."""
    split = pipeline_split(s, config)
    results = {}
    bad = 0
    total = 0
    for kind in config.kinds:
        curve = interpolation_curve(
            split,
            grid=config.grid,
            trials=config.trials,
            kind=kind,
            seed=derive_seed(config.seed, "curve", kind),
            tol=config.tol,
            max_iter=config.max_iter,
        )
        bad += curve.nonconverged
        total += curve.total_solves
        if kind == "cvx":
            resid, conv = cvx_residuals(split.s1, d, config.tol, config.max_iter)
            delta_d = float(resid.sum()) / d.n_attrs
            bad += int((~conv).sum())
            total += d.n_attrs
        else:
            delta_d = distance(kind, split.s1, d).value
        g_star, saturated = fit_invert(curve, delta_d)
        results[kind] = CalibrationResult(
            g_star=g_star,
            gamma=gamma_score(g_star, split.s2.n_attrs),
            saturated=saturated,
            delta_d=delta_d,
            curve=curve,
        )
    gamma_cvx = results["cvx"].gamma if "cvx" in results else float("nan")
    gamma_jp = results["jp"].gamma if "jp" in results else float("nan")
    gamma_tilde = (
        combined_score(gamma_cvx, gamma_jp)
        if "cvx" in results and "jp" in results
        else float("nan")
    )
    delta_full = {}
    if config.include_full_delta:
        for kind in config.kinds:
            delta_full[kind] = distance(
                kind, s, d, config.tol, config.max_iter
            ).value
    return MeaningfulnessReport(
        gamma_cvx=gamma_cvx,
        gamma_jp=gamma_jp,
        gamma_tilde=gamma_tilde,
        results=results,
        config=config,
        s1_size=split.s1.n_attrs,
        s2_size=split.s2.n_attrs,
        degraded=total > 0 and bad / total > DEGRADED_FRACTION,
        delta_full=delta_full,
    )
