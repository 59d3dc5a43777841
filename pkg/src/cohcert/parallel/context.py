"""Executor context management for the cohcert package."""

from concurrent.futures import Executor, ProcessPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterable, Iterator, List, Optional, TypeVar

from loguru import logger

from cohcert.utils.helpers import resolve_workers

T = TypeVar("T")
R = TypeVar("R")


class SerialExecutor:
    """In-process stand-in with the ``map`` and ``shutdown`` subset we use."""

    def map(self, fn: Callable[[T], R], items: Iterable[T], chunksize: int = 1) -> Iterator[R]:
        return map(fn, items)

    def shutdown(self, wait: bool = True, cancel_futures: bool = False) -> None:
        pass


class ExecutorContext:
    """Context manager for worker pools with automatic cleanup."""

    def __init__(self, workers: Optional[int] = None):
        """Initialize the executor context.

        Args:
            workers: Number of worker processes. ``None`` reads
                ``COHCERT_THREADS``; 1 runs everything in-process.
        """
        self.workers = resolve_workers(workers)
        self.executor = None

    def __enter__(self):
        """Enter the context and create the executor."""
        try:
            if self.workers <= 1:
                self.executor = SerialExecutor()
            else:
                self.executor = ProcessPoolExecutor(max_workers=self.workers)
            logger.debug(f"Executor ready with {self.workers} worker(s)")
            return self.executor
        except Exception as e:
            logger.error(f"Failed to initialize executor: {e}")
            if self.executor:
                self.executor.shutdown(wait=False, cancel_futures=True)
            raise

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Exit the context and shut the executor down."""
        if self.executor:
            try:
                self.executor.shutdown(wait=True, cancel_futures=exc_type is not None)
            except Exception as e:
                logger.error(f"Error while shutting down executor: {e}")

        return False


@contextmanager
def new_executor(workers: Optional[int] = None):
    """Create a worker pool for independent evaluations.

    Example:
        with new_executor(4) as pool:
            values = list(pool.map(evaluate, samples))

    Yields:
        Executor: A process pool, or an in-process executor for one worker.
    """
    with ExecutorContext(workers=workers) as executor:
        yield executor


def parallel_map(fn: Callable[[T], R], items: List[T], workers: Optional[int] = None) -> List[R]:
    """Evaluate ``fn`` over ``items`` in order, using ``new_executor``."""
    with new_executor(workers) as pool:
        chunk = max(1, len(items) // (4 * resolve_workers(workers)))
        return list(pool.map(fn, items, chunksize=chunk))
