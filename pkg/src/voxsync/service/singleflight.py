"""Coalesce concurrent identical requests: one leader does the work, the
rest wait for its outcome."""

from __future__ import annotations

import threading


class Flight:
    def __init__(self):
        self._done = threading.Event()
        self._result = None
        self._error: BaseException | None = None

    def resolve(self, result):
        self._result = result
        self._done.set()

    def reject(self, error: BaseException):
        self._error = error
        self._done.set()

    def wait(self):
        self._done.wait()
        if self._error is not None:
            raise self._error
        return self._result


class SingleFlight:
    def __init__(self):
        self._lock = threading.Lock()
        self._flights: dict[str, Flight] = {}

    def begin(self, key: str) -> tuple[Flight, bool]:
        """Return (flight, is_leader). The leader must resolve or reject the
        flight and then call end()."""
        with self._lock:
            flight = self._flights.get(key)
            if flight is not None:
                return flight, False
            flight = Flight()
            self._flights[key] = flight
            return flight, True

    def end(self, key: str):
        with self._lock:
            self._flights.pop(key, None)

    def in_flight(self) -> int:
        with self._lock:
            return len(self._flights)
