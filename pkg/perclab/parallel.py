#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Worker pool owned by the command-line layer.

Library functions accept an ``executor`` argument (any callable with the
signature of builtin ``map``) and never start processes themselves. The
CLI resolves a worker count and enters :func:`worker_map`, which yields
either builtin ``map`` or the ``map`` of a multiprocessing pool. Pool
``map`` returns results in task order, so reductions over its output do
not depend on the number of workers.
"""

import logging
import multiprocessing
import os
from contextlib import contextmanager
from typing import Any, Callable, Iterator, Optional

from perclab.constants import WORKERS_ENV
from perclab.errors import UsageError

logger = logging.getLogger(__name__)


def resolve_workers(requested: Optional[int] = None) -> int:
    """
    Decide how many worker processes to use.

    Precedence: explicit request, then the PERCLAB_WORKERS environment
    variable, then 1.

    Raises:
        UsageError: if the request or the environment value is not a
          positive integer
    """
    if requested is not None:
        if requested < 1:
            raise UsageError(f"worker count must be positive, got {requested}")
        return requested
    raw = os.environ.get(WORKERS_ENV)
    if raw is None or raw.strip() == "":
        return 1
    try:
        workers = int(raw)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    if workers < 1:
        raise UsageError(f"{WORKERS_ENV} must be positive, got {workers}")
    return workers


def _pool_context() -> Any:
    # fork inherits the imported package; spawn is the fallback where
    # fork is unavailable
    try:
        return multiprocessing.get_context("fork")
    except ValueError:
        return multiprocessing.get_context("spawn")


@contextmanager
def worker_map(workers: int = 1) -> Iterator[Callable[..., Any]]:
    """
    Yield a ``map``-compatible callable backed by ``workers`` processes.

    Example:
        >>> with worker_map(1) as executor:
        ...     list(executor(abs, [-1, 2]))
        [1, 2]
    """
    if workers <= 1:
        yield map
        return
    ctx = _pool_context()
    logger.debug("starting %d workers (%s)", workers, ctx.get_start_method())
    with ctx.Pool(processes=workers) as pool:
        yield pool.map
