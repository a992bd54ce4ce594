"""Cooperative timeout support for the explanation searches."""

from __future__ import annotations

import time


class TimeoutExceeded(Exception):
    """Raised when a search runs past its deadline.

    ``partial`` carries whatever complete results were found before the
    deadline hit (always a list, possibly empty).
    """

    def __init__(self, message: str = "timed out", partial=None):
        super().__init__(message)
        self.partial = list(partial) if partial else []


class Deadline:
    """Monotonic-clock deadline checked at every validity test."""

    __slots__ = ("_at",)

    def __init__(self, timeout_ms: int | None):
        self._at = None if timeout_ms is None else time.monotonic() + timeout_ms / 1000.0

    def check(self, partial=None) -> None:
        if self._at is not None and time.monotonic() > self._at:
            raise TimeoutExceeded(partial=partial)

    def expired(self) -> bool:
        return self._at is not None and time.monotonic() > self._at


NO_DEADLINE = Deadline(None)
