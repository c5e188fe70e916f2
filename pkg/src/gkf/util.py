"""Small runtime helpers: progress reporting and deterministic parallel map."""

import os
import sys
from concurrent.futures import ThreadPoolExecutor

_threads = None
progress_enabled = False


def set_threads(k):
    global _threads
    _threads = max(1, int(k)) if k else None


def get_threads() -> int:
    if _threads is not None:
        return _threads
    return os.cpu_count() or 1


def progress(msg: str):
    """Checkpoint line on stderr; stdout stays machine-readable."""
    if progress_enabled:
        print(msg, file=sys.stderr, flush=True)


def parallel_ordered_map(fn, items):
    """Map preserving input order; results never depend on the thread count."""
    items = list(items)
    k = get_threads()
    if k <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))
