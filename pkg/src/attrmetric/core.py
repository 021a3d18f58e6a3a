"""Binary attribute matrices: validation, binarization, meaningful-set splitting.

An attribute over a fixed image set is a vector in {-1, +1}^N, one sign per
image.  A set of attributes is stored column-wise as an N x K integer matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSplit,
    EmptyMatrix,
    NonBinaryEntry,
    NonFiniteScore,
    RaggedRows,
    TooFewAttributes,
)

ZERO_POLICIES = ("map_to_plus", "map_to_minus")


@dataclass(frozen=True)
class AttributeMatrix:
    """N x K matrix over {-1, +1}; columns are attribute vectors.

    ``entries`` is an int8 array, frozen after construction.  A zero-column
    matrix is permitted only as the empty-noise marker produced by generators;
    `validate_attribute_matrix` rejects it for user input.
    """

    entries: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        e = self.entries
        if e.ndim != 2:
            raise RaggedRows(f"expected 2-D entries, got ndim={e.ndim}")
        if e.shape[0] < 1:
            raise EmptyMatrix(f"matrix has {e.shape[0]} rows")
        if e.shape[1] > 0 and not np.isin(e, (-1, 1)).all():
            bad = e[~np.isin(e, (-1, 1))][0]
            raise NonBinaryEntry(f"entry {bad!r} is not -1 or +1")
        if self.names is not None and len(self.names) != e.shape[1]:
            raise RaggedRows(
                f"{len(self.names)} names for {e.shape[1]} columns"
            )
        e.setflags(write=False)

    @property
    def n_images(self) -> int:
        return self.entries.shape[0]

    @property
    def n_attrs(self) -> int:
        return self.entries.shape[1]

    def column(self, k: int) -> np.ndarray:
        return self.entries[:, k]

    def take_columns(self, idx) -> "AttributeMatrix":
        names = None
        if self.names is not None:
            names = tuple(self.names[i] for i in idx)
        return AttributeMatrix(self.entries[:, list(idx)].copy(), names)


@dataclass(frozen=True)
class ScoreMatrix:
    """N x K real-valued classifier scores, to be binarized by sign."""

    entries: np.ndarray

    def __post_init__(self):
        e = self.entries
        if e.ndim != 2:
            raise RaggedRows(f"expected 2-D entries, got ndim={e.ndim}")
        if e.shape[0] < 1 or e.shape[1] < 1:
            raise EmptyMatrix(f"score matrix shape {e.shape}")
        e.setflags(write=False)

    @property
    def n_images(self) -> int:
        return self.entries.shape[0]

    @property
    def n_attrs(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True)
class MeaningfulSplit:
    """Disjoint halves S1, S2 of a meaningful attribute set, plus provenance."""

    s1: AttributeMatrix
    s2: AttributeMatrix
    seed: int
    source_columns_s1: tuple[int, ...]
    source_columns_s2: tuple[int, ...]

    def __post_init__(self):
        a = set(self.source_columns_s1)
        b = set(self.source_columns_s2)
        total = self.s1.n_attrs + self.s2.n_attrs
        if a & b or a | b != set(range(total)):
            raise DegenerateSplit("split column indices are not a disjoint cover")
        if self.s1.n_images != self.s2.n_images:
            raise DegenerateSplit("split halves disagree on n_images")


def validate_attribute_matrix(raw, names=None) -> AttributeMatrix:
    """Build an AttributeMatrix from a raw integer matrix.

    Raises RaggedRows, EmptyMatrix or NonBinaryEntry on malformed input.
    """
    if isinstance(raw, np.ndarray):
        arr = raw
        if arr.ndim != 2:
            raise RaggedRows(f"expected 2-D input, got ndim={arr.ndim}")
    else:
        rows = [list(r) for r in raw]
        if len(rows) == 0:
            raise EmptyMatrix("matrix has no rows")
        if any(len(r) != len(rows[0]) for r in rows[1:]):
            raise RaggedRows("rows have unequal lengths")
        if len(rows[0]) == 0:
            raise EmptyMatrix("matrix has no columns")
        arr = np.array(rows)
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise EmptyMatrix(f"matrix shape {arr.shape}")
    if not np.isin(arr, (-1, 1)).all():
        bad = np.asarray(arr)[~np.isin(arr, (-1, 1))][0]
        raise NonBinaryEntry(f"entry {bad!r} is not -1 or +1")
    return AttributeMatrix(arr.astype(np.int8), tuple(names) if names else None)


def binarize_scores(scores: ScoreMatrix, zero_policy: str = "map_to_plus") -> AttributeMatrix:
    """Sign-binarize classifier scores; exact zeros go to the policy value."""
    if zero_policy not in ZERO_POLICIES:
        raise ValueError(f"unknown zero_policy {zero_policy!r}")
    e = scores.entries
    if not np.isfinite(e).all():
        raise NonFiniteScore("scores contain NaN or infinity")
    zero_val = 1 if zero_policy == "map_to_plus" else -1
    out = np.where(e > 0, 1, np.where(e < 0, -1, zero_val)).astype(np.int8)
    return AttributeMatrix(out)


def split_meaningful(s: AttributeMatrix, ratio: float = 0.5, seed: int = 0) -> MeaningfulSplit:
    """Split S into disjoint halves by a seeded uniform column shuffle.

    |S1| = round(ratio * J), remainder to S2.  Deterministic per
    (s, ratio, seed).
    """
    j = s.n_attrs
    if j < 2:
        raise TooFewAttributes(f"need at least 2 attributes, got {j}")
    if not 0.0 < ratio < 1.0:
        raise DegenerateSplit(f"ratio {ratio} outside (0, 1)")
    n1 = int(np.floor(ratio * j + 0.5))
    if n1 == 0 or n1 == j:
        raise DegenerateSplit(f"ratio {ratio} leaves an empty side for J={j}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(j)
    idx1 = tuple(sorted(int(i) for i in perm[:n1]))
    idx2 = tuple(sorted(int(i) for i in perm[n1:]))
    return MeaningfulSplit(
        s1=s.take_columns(idx1),
        s2=s.take_columns(idx2),
        seed=seed,
        source_columns_s1=idx1,
        source_columns_s2=idx2,
    )


def concat_columns(a: AttributeMatrix, b: AttributeMatrix) -> AttributeMatrix:
    """Column-wise concatenation; either side may be a zero-column marker."""
    if a.n_images != b.n_images:
        raise DegenerateSplit("cannot concatenate matrices with different n_images")
    if b.n_attrs == 0:
        return a
    if a.n_attrs == 0:
        return b
    return AttributeMatrix(np.hstack([a.entries, b.entries]).astype(np.int8))
