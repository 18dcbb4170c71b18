"""Fetch policy and the injectable clock the scheduler runs against."""

from __future__ import annotations

import datetime as dt
import time
from dataclasses import dataclass
from typing import Protocol

DEFAULT_USER_AGENT = (
    "wikirisk/0.1 (knowledge-integrity observatory; configure a contact address)"
)


class Clock(Protocol):
    """Time source; tests inject a fake so no test ever really sleeps."""

    def monotonic(self) -> float: ...

    def sleep(self, seconds: float) -> None: ...

    def utcnow(self) -> dt.datetime: ...


class SystemClock:
    def monotonic(self) -> float:
        return time.monotonic()

    def sleep(self, seconds: float) -> None:
        if seconds > 0:
            time.sleep(seconds)

    def utcnow(self) -> dt.datetime:
        return dt.datetime.now(dt.timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class BackoffSchedule:
    """Exponential backoff: initial, initial*multiplier, initial*multiplier^2, ..."""

    initial: float = 0.5
    multiplier: float = 2.0

    def __post_init__(self) -> None:
        if self.initial < 0:
            raise ValueError("backoff initial must be >= 0")
        if self.multiplier <= 1.0:
            raise ValueError("backoff multiplier must be > 1")

    def delay(self, retry_index: int) -> float:
        return self.initial * self.multiplier**retry_index


@dataclass(frozen=True)
class FetchPolicy:
    """How politely and persistently the client talks to one upstream host."""

    max_in_flight: int = 2
    min_request_interval: float = 0.5
    max_retries: int = 3
    backoff: BackoffSchedule = BackoffSchedule()
    timeout: float = 30.0
    user_agent: str = DEFAULT_USER_AGENT

    def __post_init__(self) -> None:
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be >= 1")
        if self.min_request_interval < 0:
            raise ValueError("min_request_interval must be >= 0")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
