import time
from typing import Callable, Dict, Optional

from loguru import logger


class IntervalCounter:
    def __init__(self, name, interval: float = 10):
        self._name = name
        self._last_log_time = 0
        self._start_time = 0
        self._interval = interval
        self._interval_counter = 0
        self._total_counter = 0

    def add(self, val=1, fields: Optional[Callable[[], Dict[str, object]]] = None):
        """Count val; fields is only called when a progress line is due."""
        self._interval_counter += val
        self._total_counter += val
        now = time.monotonic()
        if self._last_log_time == 0:
            self._start_time = now
            self._last_log_time = now
        if now - self._last_log_time > self._interval:
            extra = fields() if fields is not None else {}
            logger.info(
                "[{}] total: {}, interval: {}, avg_per_second: {:.1f}{}",
                self._name, self._total_counter, self._interval_counter,
                self._total_counter / (now - self._start_time),
                "".join(f", {k}: {v}" for k, v in extra.items()),
            )
            self._interval_counter = 0
            self._last_log_time = now
