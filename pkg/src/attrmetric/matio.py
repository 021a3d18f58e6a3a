"""Bit-exact file formats: attribute matrices, reports, run manifests.

Matrix format: optional '#' comment lines, then a header line "N K", then N
rows of K space-separated values from {-1, 1}.  A comment line of the form
"# columns: a b c" carries column names.  Reports and manifests are JSON.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .calibrate import EvalConfig, MeaningfulnessReport
from .core import AttributeMatrix, validate_attribute_matrix
from .errors import HeaderMismatch, IoFailure, ManifestError, ParseError

REPORT_FORMAT_VERSION = 1


@dataclass(frozen=True)
class RunManifest:
    """File paths plus the evaluation configuration for one metric run."""

    s_path: Path
    d_path: Path
    config: EvalConfig


def read_matrix(path) -> AttributeMatrix:
    """Parse and validate an attribute matrix file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    names = None
    lines = [ln.strip() for ln in text.splitlines()]
    body = []
    header = None
    for ln in lines:
        if not ln:
            continue
        if ln.startswith("#"):
            if header is None:
                comment = ln.lstrip("#").strip()
                if comment.startswith("columns:"):
                    names = comment[len("columns:"):].split()
            continue
        if header is None:
            header = ln
        else:
            body.append(ln)
    if header is None:
        raise ParseError(f"{path}: no header line")
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"{path}: header must be 'N K', got {header!r}")
    try:
        n, k = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ParseError(f"{path}: non-integer header token") from exc
    rows = []
    for ln in body:
        try:
            rows.append([int(tok) for tok in ln.split()])
        except ValueError as exc:
            raise ParseError(f"{path}: non-integer token in row {len(rows)}") from exc
    if len(rows) != n or any(len(r) != k for r in rows):
        raise HeaderMismatch(
            f"{path}: header declares {n}x{k}, body is "
            f"{len(rows)}x{[len(r) for r in rows[:1]] or [0]}"
        )
    if names is not None and len(names) != k:
        raise HeaderMismatch(f"{path}: {len(names)} column names for {k} columns")
    return validate_attribute_matrix(rows, names=names)


def _atomic_write_text(path: Path, text: str):
    """Write to a temp file in the same directory, then rename."""
    try:
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def write_matrix(m: AttributeMatrix, path):
    """Emit the canonical matrix format; round-trips entry-identically."""
    path = Path(path)
    out = []
    if m.names is not None:
        out.append("# columns: " + " ".join(m.names))
    out.append(f"{m.n_images} {m.n_attrs}")
    for row in m.entries:
        out.append(" ".join(str(int(v)) for v in row))
    _atomic_write_text(path, "\n".join(out) + "\n")


def report_to_dict(r: MeaningfulnessReport) -> dict:
    """Stable JSON-ready form of a report."""
    curves = {}
    for kind, res in r.results.items():
        c = res.curve
        curves[kind] = {
            "grid": list(c.grid),
            "mean_delta": list(c.mean_delta),
            "isotonic_delta": list(c.isotonic_delta),
            "trials": c.trials,
            "seed": c.seed,
            "nonconverged": c.nonconverged,
            "total_solves": c.total_solves,
        }
    doc = {
        "format_version": REPORT_FORMAT_VERSION,
        "gamma_cvx": r.gamma_cvx,
        "gamma_jp": r.gamma_jp,
        "gamma_tilde": r.gamma_tilde,
        "g_star": {k: res.g_star for k, res in r.results.items()},
        "saturated": {k: res.saturated for k, res in r.results.items()},
        "delta_d": {k: res.delta_d for k, res in r.results.items()},
        "curves": curves,
        "degraded": r.degraded,
        "config": {
            "ratio": r.config.ratio,
            "seed": r.config.seed,
            "grid": list(r.config.grid),
            "trials": r.config.trials,
            "tol": r.config.tol,
            "max_iter": r.config.max_iter,
            "zero_policy": r.config.zero_policy,
            "kinds": list(r.config.kinds),
            "s1_size": r.s1_size,
            "s2_size": r.s2_size,
            # g_star is kept continuous (interpolated), not integer-rounded,
            # so scores remain comparable between close methods
            "g_star_interpolated": True,
        },
    }
    if r.delta_full:
        doc["delta_full"] = dict(r.delta_full)
    return doc


def write_report(r: MeaningfulnessReport, path):
    """Serialize a report as deterministic JSON (sorted keys, fixed layout)."""
    path = Path(path)
    text = json.dumps(report_to_dict(r), sort_keys=True, indent=2)
    _atomic_write_text(path, text + "\n")


def read_report(path) -> dict:
    """Load a report file back as a plain dict."""
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc


def load_manifest(path) -> RunManifest:
    """Load and validate a run manifest (JSON with s, d and config keys)."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: invalid JSON: {exc}") from exc
    for key in ("s", "d"):
        if key not in doc:
            raise ManifestError(f"{path}: missing key {key!r}")
    base = path.parent
    s_path = (base / doc["s"]).resolve()
    d_path = (base / doc["d"]).resolve()
    for p in (s_path, d_path):
        if not p.exists():
            raise ManifestError(f"{path}: referenced file {p} does not exist")
    cfg = doc.get("config", {})
    config = EvalConfig(
        ratio=float(cfg.get("ratio", EvalConfig.ratio)),
        seed=int(cfg.get("seed", EvalConfig.seed)),
        grid=tuple(int(m) for m in cfg.get("grid", EvalConfig.grid)),
        trials=int(cfg.get("trials", EvalConfig.trials)),
        tol=float(cfg.get("tol", EvalConfig.tol)),
        max_iter=int(cfg.get("max_iter", EvalConfig.max_iter)),
        zero_policy=str(cfg.get("zero_policy", EvalConfig.zero_policy)),
    )
    if not 0.0 < config.ratio < 1.0:
        raise ManifestError(f"{path}: ratio {config.ratio} outside (0, 1)")
    if config.trials < 1 or config.tol <= 0 or config.max_iter < 1:
        raise ManifestError(f"{path}: config values out of range")
    if config.zero_policy not in ("map_to_plus", "map_to_minus"):
        raise ManifestError(f"{path}: unknown zero_policy {config.zero_policy!r}")
    return RunManifest(s_path=s_path, d_path=d_path, config=config)
