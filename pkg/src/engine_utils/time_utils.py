from functools import wraps
import time

from loguru import logger


def timeit(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.monotonic()
        result = func(*args, **kwargs)
        execution_time = time.monotonic() - start_time
        logger.debug(f"Function {func.__name__} took {execution_time:.3f}s to execute.")
        return result
    return wrapper


class Stopwatch:
    """Monotonic elapsed-time source shared by a search and its trace."""

    def __init__(self):
        self._start = time.monotonic()

    def elapsed(self) -> float:
        return time.monotonic() - self._start

    def expired(self, limit) -> bool:
        return limit is not None and self.elapsed() >= limit
