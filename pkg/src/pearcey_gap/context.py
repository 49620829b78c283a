"""Shared evaluation context: worker pool lifecycle and tolerance scaling."""

import asyncio
import functools
import logging
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import Any, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")

THREADS_ENV = "PEARCEY_THREADS"


def resolve_threads(threads: int | None = None) -> int:
    """Explicit value, else $PEARCEY_THREADS, else the CPU count."""
    if threads is not None:
        return max(1, threads)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            logger.warning(f"⚠️ ignoring non-integer {THREADS_ENV}={env!r}")
    return os.cpu_count() or 1


class ComputeContext:
    """Owns the thread pool that numerical work is dispatched to."""

    def __init__(self, threads: int | None = None, tol_scale: float = 1.0):
        if tol_scale <= 0:
            raise ValueError(f"tol_scale must be positive, got {tol_scale}")
        self.threads = resolve_threads(threads)
        self.tol_scale = tol_scale
        self.executor: ThreadPoolExecutor | None = None

    async def start(self) -> None:
        """Start the worker pool."""
        if self.executor is None:
            self.executor = ThreadPoolExecutor(max_workers=self.threads, thread_name_prefix="pearcey")
            logger.debug(f"worker pool started with {self.threads} threads")

    async def stop(self) -> None:
        """Shut the worker pool down."""
        if self.executor is not None:
            self.executor.shutdown(wait=True)
        self.executor = None

    async def __aenter__(self) -> "ComputeContext":
        await self.start()
        return self

    async def __aexit__(self, *exc: Any) -> None:
        await self.stop()

    def tolerance(self, base: float) -> float:
        return base * self.tol_scale

    async def run(self, fn: Callable[..., T], *args: Any, **kwargs: Any) -> T:
        """Run a blocking computation on the pool."""
        await self.start()
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(self.executor, functools.partial(fn, *args, **kwargs))

    async def map(self, fn: Callable[[Any], T], items: Iterable[Any]) -> list[T]:
        """Apply ``fn`` to every item concurrently; results keep the input order."""
        return list(await asyncio.gather(*(self.run(fn, item) for item in items)))
