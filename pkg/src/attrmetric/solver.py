"""Distances from a discovered attribute set to the meaningful subspace.

Three variants, all averages of per-column squared reconstruction errors
against the meaningful matrix A (N x J):

* lsq -- unconstrained least squares, minimum-norm on rank deficiency;
* cvx -- coefficients restricted to the probability simplex (distance to the
  convex hull of the meaningful attributes), solved by pairwise Frank-Wolfe;
* jp  -- one nonzero coefficient per row and column of R, i.e. a one-to-one
  pairing, chosen greedily by descending agreement correlation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AttributeMatrix
from .errors import LengthMismatch


@dataclass(frozen=True)
class PairSet:
    """Greedy one-to-one matching between meaningful and discovered columns.

    ``pairs`` holds (meaningful_index, discovered_index, correlation) triples;
    ``r_star`` is the induced J x K 0/1 assignment matrix.
    """

    pairs: tuple[tuple[int, int, float], ...]
    r_star: np.ndarray

    def __post_init__(self):
        self.r_star.setflags(write=False)


@dataclass(frozen=True)
class DistanceValue:
    """A distance of one kind, with its per-column residual breakdown."""

    kind: str
    value: float
    per_column: np.ndarray

    def __post_init__(self):
        self.per_column.setflags(write=False)


@dataclass(frozen=True)
class SimplexSolution:
    """Result of one simplex-constrained least-squares subproblem."""

    coefficients: np.ndarray
    residual_sq: float
    iterations: int
    converged: bool

    def __post_init__(self):
        self.coefficients.setflags(write=False)


DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 5000


def _check_images(s: AttributeMatrix, d: AttributeMatrix):
    if s.n_images != d.n_images:
        raise LengthMismatch(
            f"n_images mismatch: {s.n_images} vs {d.n_images}"
        )


def correlation(z, h) -> float:
    """Fraction of images on which two attribute vectors agree."""
    z = np.asarray(z)
    h = np.asarray(h)
    if z.shape != h.shape or z.ndim != 1:
        raise LengthMismatch(f"shapes {z.shape} vs {h.shape}")
    return float(np.count_nonzero(z == h)) / z.shape[0]


def _match_counts(s: AttributeMatrix, d: AttributeMatrix) -> np.ndarray:
    """J x K integer matrix of per-pair agreement counts."""
    a = s.entries.astype(np.int64)
    b = d.entries.astype(np.int64)
    # count(z = h) = (N + <h, z>) / 2 for +-1 vectors
    return (s.n_images + a.T @ b) // 2


def greedy_pair(s: AttributeMatrix, d: AttributeMatrix) -> PairSet:
    """Repeatedly pick the highest-correlation unused (j, k) pair.

    Ties break on the lowest (j, k) in lexicographic order, so the result is
    deterministic.  min(J, K) pairs are produced.
    """
    _check_images(s, d)
    n = s.n_images
    counts = _match_counts(s, d)
    j_dim, k_dim = counts.shape
    m = min(j_dim, k_dim)
    work = counts.astype(np.float64)
    pairs = []
    r_star = np.zeros((j_dim, k_dim), dtype=np.int8)
    for _ in range(m):
        # argmax scans row-major, so first occurrence is the lexicographic min
        j, k = np.unravel_index(np.argmax(work), work.shape)
        pairs.append((int(j), int(k), counts[j, k] / n))
        r_star[j, k] = 1
        work[j, :] = -np.inf
        work[:, k] = -np.inf
    return PairSet(pairs=tuple(pairs), r_star=r_star)


def dist_jp(s: AttributeMatrix, d: AttributeMatrix) -> DistanceValue:
    """One-to-one pairing distance (greedy assignment reconstruction error).

    A matched column k paired with meaningful column j contributes
    ||h_j - z_k||^2 = 4N(1 - rho); an unmatched column (K > J) keeps an
    all-zero assignment column and contributes ||z_k||^2 = N.
    """
    _check_images(s, d)
    n = s.n_images
    pairs = greedy_pair(s, d)
    per_column = np.full(d.n_attrs, float(n))
    for j, k, _rho in pairs.pairs:
        matches = round(correlation(s.column(j), d.column(k)) * n)
        per_column[k] = float(4 * (n - matches))
    value = float(per_column.sum()) / d.n_attrs
    return DistanceValue(kind="jp", value=value, per_column=per_column)


def dist_lsq(s: AttributeMatrix, d: AttributeMatrix) -> DistanceValue:
    """Unconstrained average reconstruction error (per-column least squares)."""
    _check_images(s, d)
    a = s.entries.astype(np.float64)
    b = d.entries.astype(np.float64)
    coef, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    resid = a @ coef - b
    per_column = np.einsum("ij,ij->j", resid, resid)
    per_column = np.maximum(per_column, 0.0)
    value = float(per_column.sum()) / d.n_attrs
    return DistanceValue(kind="lsq", value=value, per_column=per_column)


def _simplex_lsq_batch(a: np.ndarray, b: np.ndarray, tol: float, max_iter: int):
    """Minimize ||A r - z||^2 over the probability simplex, one z per column of b.

    Pairwise Frank-Wolfe with exact line search; iterates stay feasible by
    construction and the stopping rule is the Frank-Wolfe duality gap.

    Returns (coefficients JxK, residual_sq K, iterations K, converged K).
    """
    j_dim = a.shape[1]
    k_dim = b.shape[1]
    gram = a.T @ a
    atb = a.T @ b
    # start at the best single vertex: argmin_j ||A e_j - z||^2
    start = np.argmin(np.diag(gram)[:, None] - 2.0 * atb, axis=0)
    coef = np.zeros((j_dim, k_dim))
    coef[start, np.arange(k_dim)] = 1.0
    gram_coef = gram[:, start]  # running G @ coef, updated incrementally
    iters = np.zeros(k_dim, dtype=np.int64)
    converged = np.zeros(k_dim, dtype=bool)
    active = np.arange(k_dim)
    if j_dim == 1:
        converged[:] = True
        active = active[:0]
    for _ in range(max_iter):
        if active.size == 0:
            break
        grad = 2.0 * (gram_coef[:, active] - atb[:, active])
        fw = np.argmin(grad, axis=0)
        cols = np.arange(active.size)
        gap = np.einsum("jc,jc->c", grad, coef[:, active]) - grad[fw, cols]
        done = gap <= tol
        if done.any():
            converged[active[done]] = True
            keep = ~done
            active = active[keep]
            if active.size == 0:
                break
            grad = grad[:, keep]
            fw = fw[keep]
            cols = np.arange(active.size)
        # away vertex: worst gradient over the current support
        support = coef[:, active] > 0.0
        away = np.argmax(np.where(support, grad, -np.inf), axis=0)
        # pairwise direction e_fw - e_away with exact line search on the quadratic
        num = grad[away, cols] - grad[fw, cols]
        denom = 2.0 * (
            gram[fw, fw] - 2.0 * gram[fw, away] + gram[away, away]
        )
        step_max = coef[away, active]
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(denom > 0.0, num / denom, step_max)
        step = np.clip(step, 0.0, step_max)
        coef[fw, active] += step
        coef[away, active] -= step
        gram_coef[:, active] += step * (gram[:, fw] - gram[:, away])
        iters[active] += 1
    # guard against accumulated round-off in the simplex constraints
    coef = np.clip(coef, 0.0, None)
    coef /= coef.sum(axis=0)
    resid = a @ coef - b
    residual_sq = np.maximum(np.einsum("ij,ij->j", resid, resid), 0.0)
    return coef, residual_sq, iters, converged


def simplex_lsq(
    s: AttributeMatrix,
    z,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SimplexSolution:
    """Project one attribute column onto the convex hull of the columns of S."""
    z = np.asarray(z)
    if z.ndim != 1 or z.shape[0] != s.n_images:
        raise LengthMismatch(f"column length {z.shape} vs n_images {s.n_images}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = s.entries.astype(np.float64)
    coef, resid, iters, conv = _simplex_lsq_batch(
        a, z.astype(np.float64)[:, None], tol, max_iter
    )
    return SimplexSolution(
        coefficients=coef[:, 0],
        residual_sq=float(resid[0]),
        iterations=int(iters[0]),
        converged=bool(conv[0]),
    )


def cvx_residuals(
    s: AttributeMatrix,
    d: AttributeMatrix,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
):
    """Per-column hull residuals for all of d at once.

    Returns (per_column residuals, converged mask); shared by dist_cvx and the
    calibration curve, which needs the non-convergence counts.
    """
    _check_images(s, d)
    a = s.entries.astype(np.float64)
    b = d.entries.astype(np.float64)
    _, resid, _, conv = _simplex_lsq_batch(a, b, tol, max_iter)
    return resid, conv


def dist_cvx(
    s: AttributeMatrix,
    d: AttributeMatrix,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> DistanceValue:
    """Average squared distance of each discovered column to the hull of S."""
    per_column, _ = cvx_residuals(s, d, tol, max_iter)
    value = float(per_column.sum()) / d.n_attrs
    return DistanceValue(kind="cvx", value=value, per_column=per_column)


_DIST_FUNCS = {"lsq": dist_lsq, "jp": dist_jp}


def distance(
    kind: str,
    s: AttributeMatrix,
    d: AttributeMatrix,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> DistanceValue:
    """Dispatch by kind name ('lsq' | 'cvx' | 'jp')."""
    if kind == "cvx":
        return dist_cvx(s, d, tol, max_iter)
    try:
        return _DIST_FUNCS[kind](s, d)
    except KeyError:
        raise ValueError(f"unknown distance kind {kind!r}") from None
