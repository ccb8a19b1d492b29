"""
Ordered parallel map with a progress bar on stderr
"""

import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from tqdm import tqdm

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def default_threads() -> int:
    """SC_THREADS if set, else 1"""
    value = os.environ.get("SC_THREADS")
    if not value:
        return 1
    try:
        return max(1, int(value))
    except ValueError:
        logger.warning(f"Ignoring SC_THREADS={value!r}: not an integer")
        return 1


def parallel_map(
    func: Callable[[T], R],
    items: Iterable[T],
    threads: Optional[int] = None,
    desc: Optional[str] = None,
    progress: bool = False,
) -> List[R]:
    """Apply func to every item, keeping input order

    threads=1 runs in-process. func must be a module-level function when
    threads > 1 so the worker processes can import it.
    """
    work = list(items)
    threads = threads or default_threads()
    show = progress and len(work) > 1
    if threads <= 1 or len(work) <= 1:
        iterator = tqdm(work, desc=desc, file=sys.stderr, disable=not show)
        return [func(item) for item in iterator]

    chunksize = max(1, len(work) // (threads * 8))
    logger.debug(f"Mapping {len(work)} items over {threads} processes, chunksize {chunksize}")
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = pool.map(func, work, chunksize=chunksize)
        return list(tqdm(results, total=len(work), desc=desc, file=sys.stderr, disable=not show))
