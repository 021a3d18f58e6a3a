"""Synthetic attribute sets with controlled ground-truth meaningfulness.

These stand in for real discovery/hashing methods at desk scale: a planted
set is a noisy copy of meaningful columns, a hull set is signs of convex
combinations, and a mixture interpolates between planted and pure noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calibrate import derive_seed, gen_noise
from .core import AttributeMatrix, concat_columns
from .errors import OutOfRange


@dataclass(frozen=True)
class MixtureSpec:
    """Recipe for a planted + noise mixture of k attributes."""

    meaningful_fraction: float
    k: int
    flip_rate: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.meaningful_fraction <= 1.0:
            raise OutOfRange(f"fraction {self.meaningful_fraction} outside [0, 1]")
        if not 0.0 <= self.flip_rate < 0.5:
            raise OutOfRange(f"flip_rate {self.flip_rate} outside [0, 0.5)")
        if self.k < 1:
            raise OutOfRange(f"k must be >= 1, got {self.k}")

    @property
    def planted_count(self) -> int:
        return int(np.floor(self.meaningful_fraction * self.k + 0.5))


def planted_flip_set(
    s: AttributeMatrix, k: int, flip_rate: float, seed: int
) -> AttributeMatrix:
    """k near-meaningful columns: random S columns with entries flipped i.i.d."""
    if not 0.0 <= flip_rate < 0.5:
        raise OutOfRange(f"flip_rate {flip_rate} outside [0, 0.5)")
    rng = np.random.default_rng(seed)
    # without replacement while possible: duplicate sources could never all be
    # matched one-to-one, so a flip-free planted set would not score zero
    if k <= s.n_attrs:
        src = rng.choice(s.n_attrs, size=k, replace=False)
    else:
        src = rng.integers(0, s.n_attrs, size=k)
    cols = s.entries[:, src].astype(np.int8)
    flips = rng.random(size=cols.shape) < flip_rate
    return AttributeMatrix(np.where(flips, -cols, cols).astype(np.int8))


def hull_combination_set(
    s: AttributeMatrix, k: int, support: int, seed: int
) -> AttributeMatrix:
    """k columns: sign of A @ w for sparse random simplex weights w.

    Zero sums binarize to +1 (the default zero policy).
    """
    j = s.n_attrs
    if not 1 <= support <= j:
        raise OutOfRange(f"support {support} outside [1, {j}]")
    rng = np.random.default_rng(seed)
    a = s.entries.astype(np.float64)
    out = np.empty((s.n_images, k), dtype=np.int8)
    for i in range(k):
        idx = rng.choice(j, size=support, replace=False)
        w = rng.dirichlet(np.ones(support))
        v = a[:, idx] @ w
        out[:, i] = np.where(v >= 0, 1, -1)
    return AttributeMatrix(out)


def mixture_set(s: AttributeMatrix, spec: MixtureSpec):
    """Planted columns plus noise padding, shuffled; returns realized fraction."""
    p = spec.planted_count
    parts = []
    if p > 0:
        parts.append(
            planted_flip_set(s, p, spec.flip_rate, derive_seed(spec.seed, "planted"))
        )
    if spec.k - p > 0:
        parts.append(gen_noise(s.n_images, spec.k - p, derive_seed(spec.seed, "noise")))
    out = parts[0]
    for extra in parts[1:]:
        out = concat_columns(out, extra)
    rng = np.random.default_rng(derive_seed(spec.seed, "shuffle"))
    perm = rng.permutation(out.n_attrs)
    return out.take_columns([int(i) for i in perm]), p / spec.k


def structured_meaningful_set(
    n_images: int,
    n_attrs: int,
    flip_rate: float = 0.14,
    seed: int = 0,
) -> AttributeMatrix:
    """A meaningful set with shared structure: noisy copies of one prototype.

    Any two columns agree on ~(1-q)^2 + q^2 of the images, giving the set the
    within-subspace coherence the reconstruction distances rely on.  Used for
    synthetic benchmarks and the CLI demos; the default flip rate keeps the
    pairing distance of a random half-split below the noise-dilution level, so
    the calibration curve grows with added noise.
    """
    if not 0.0 <= flip_rate < 0.5:
        raise OutOfRange(f"flip_rate {flip_rate} outside [0, 0.5)")
    rng = np.random.default_rng(seed)
    master = (rng.integers(0, 2, size=(n_images, 1)) * 2 - 1).astype(np.int8)
    cols = np.repeat(master, n_attrs, axis=1)
    flips = rng.random(size=cols.shape) < flip_rate
    return AttributeMatrix(np.where(flips, -cols, cols).astype(np.int8))
