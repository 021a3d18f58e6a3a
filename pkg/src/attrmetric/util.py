"""Worker-pool helper with deterministic, input-ordered gathering."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "AMM_THREADS"


def worker_count() -> int:
    """Worker cap from the AMM_THREADS environment variable (0/unset = auto)."""
    raw = os.environ.get(ENV_THREADS, "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def ordered_map(fn, items):
    """Apply fn to items, possibly in parallel; results keep input order.

    Tasks must be pure, so the output is identical for any worker count.
    """
    items = list(items)
    workers = min(worker_count(), max(len(items), 1))
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
