"""Worker pools for embarrassingly parallel sweeps."""

from cohcert.parallel.context import ExecutorContext, SerialExecutor, new_executor, parallel_map

__all__ = ["ExecutorContext", "SerialExecutor", "new_executor", "parallel_map"]
