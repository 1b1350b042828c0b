"""Concurrency utilities for replica execution."""

import asyncio
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, TypeVar

from ..core.config import config
from ..utils.logger import get_logger

logger = get_logger(__name__)

T = TypeVar("T")


@dataclass
class ReplicaTask:
    """One replica's outcome."""

    index: int
    result: Any = None
    error: Optional[BaseException] = None
    completed: bool = False


class ReplicaPool:
    """Thread pool for running replica functions off the event loop.

    Each replica receives its index and nothing else, so its randomness must
    come from a stream keyed on that index. Results are returned in index
    order regardless of completion order or worker count.
    """

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max(1, max_workers if max_workers is not None else config.threads)
        self._executor: Optional[ThreadPoolExecutor] = None

    async def start(self) -> None:
        """Start the worker threads."""
        if self._executor is None:
            self._executor = ThreadPoolExecutor(
                max_workers=self.max_workers, thread_name_prefix="smlab-replica"
            )

    async def stop(self) -> None:
        """Shut down the worker threads."""
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    async def __aenter__(self) -> "ReplicaPool":
        await self.start()
        return self

    async def __aexit__(self, *exc_info: object) -> None:
        await self.stop()

    @property
    def running(self) -> bool:
        return self._executor is not None

    async def _run_one(self, func: Callable[[int], T], index: int) -> ReplicaTask:
        task = ReplicaTask(index=index)
        loop = asyncio.get_running_loop()
        try:
            task.result = await loop.run_in_executor(self._executor, func, index)
        except Exception as exc:
            task.error = exc
        task.completed = True
        return task

    async def run(self, func: Callable[[int], T], count: int) -> List[ReplicaTask]:
        """Run ``func(i)`` for i in range(count); tasks come back in index order."""
        await self.start()
        tasks = await asyncio.gather(*(self._run_one(func, i) for i in range(count)))
        return sorted(tasks, key=lambda t: t.index)

    async def map(self, func: Callable[[int], T], count: int) -> List[T]:
        """Like :meth:`run` but unwraps results; re-raises the lowest-index failure."""
        tasks = await self.run(func, count)
        for task in tasks:
            if task.error is not None:
                logger.error(f"Replica {task.index} failed: {task.error}")
                raise task.error
        return [task.result for task in tasks]


def run_replicas(
    func: Callable[[int], T], count: int, max_workers: Optional[int] = None
) -> List[T]:
    """Synchronous wrapper around :meth:`ReplicaPool.map`."""
    workers = max_workers if max_workers is not None else config.threads
    if workers <= 1 or count <= 1:
        return [func(i) for i in range(count)]

    async def _go() -> List[T]:
        async with ReplicaPool(workers) as pool:
            return await pool.map(func, count)

    return asyncio.run(_go())
