"""Thread-pool helpers with order-preserving merges."""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV_VAR = "MOG_THREADS"


def resolve_threads(requested: Optional[int] = None, configured: Optional[int] = None) -> int:
    """Decide how many worker threads to use.

    Precedence: explicit request, then the MOG_THREADS environment variable,
    then the configured value, then the machine's core count.

    Args:
        requested: Value from the ``--threads`` flag, if any
        configured: Value from the config file, if any

    Returns:
        Worker count (at least 1)
    """
    if requested is not None:
        return max(1, int(requested))

    env_value = os.environ.get(THREADS_ENV_VAR)
    if env_value:
        try:
            return max(1, int(env_value))
        except ValueError:
            pass

    if configured is not None:
        return max(1, int(configured))

    return os.cpu_count() or 1


def chunked(items: Sequence[T], chunks: int) -> List[Sequence[T]]:
    """Split ``items`` into at most ``chunks`` contiguous slices."""
    if not items:
        return []
    chunks = max(1, min(chunks, len(items)))
    size = -(-len(items) // chunks)
    return [items[i:i + size] for i in range(0, len(items), size)]


def parallel_map(func: Callable[[T], R], items: Sequence[T], threads: Optional[int] = 1) -> List[R]:
    """Apply ``func`` to every item, possibly on a thread pool.

    Results come back in input order whatever the thread count, so callers
    merge deterministically.

    Args:
        func: Function applied to each item
        items: Work items
        threads: Worker count; None resolves from the environment, 1 runs inline

    Returns:
        List of results aligned with ``items``
    """
    if threads is None:
        threads = resolve_threads()
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as executor:
        return list(executor.map(func, items))
