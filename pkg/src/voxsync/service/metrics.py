"""Monotone counters and a request latency histogram, rendered as plain text."""

from __future__ import annotations

import threading

LATENCY_BOUNDS_MS = (1, 5, 10, 25, 50, 100, 250, 500, 1000)


class Metrics:
    """Thread-safe registry. Histogram buckets are disjoint bins, so their
    counts sum to requests_total."""

    def __init__(self):
        self._lock = threading.Lock()
        self.requests_total = 0
        self.cache_hits_total = 0
        self.synth_total = 0
        self.errors: dict[str, int] = {}
        self.latency_bins = [0] * (len(LATENCY_BOUNDS_MS) + 1)

    def inc_requests(self):
        with self._lock:
            self.requests_total += 1

    def inc_hits(self):
        with self._lock:
            self.cache_hits_total += 1

    def inc_synth(self):
        with self._lock:
            self.synth_total += 1

    def inc_error(self, code: str):
        with self._lock:
            self.errors[code] = self.errors.get(code, 0) + 1

    def observe_latency_ms(self, ms: float):
        index = len(LATENCY_BOUNDS_MS)
        for i, bound in enumerate(LATENCY_BOUNDS_MS):
            if ms <= bound:
                index = i
                break
        with self._lock:
            self.latency_bins[index] += 1

    def snapshot(self) -> dict:
        with self._lock:
            return {
                "requests_total": self.requests_total,
                "cache_hits_total": self.cache_hits_total,
                "synth_total": self.synth_total,
                "errors": dict(self.errors),
                "latency_bins": list(self.latency_bins),
            }

    def render(self) -> str:
        snap = self.snapshot()
        lines = [
            f"requests_total {snap['requests_total']}",
            f"cache_hits_total {snap['cache_hits_total']}",
            f"synth_total {snap['synth_total']}",
        ]
        for code in sorted(snap["errors"]):
            lines.append(f'errors_total{{code="{code}"}} {snap["errors"][code]}')
        labels = [str(b) for b in LATENCY_BOUNDS_MS] + ["+Inf"]
        for label, count in zip(labels, snap["latency_bins"]):
            lines.append(f'request_latency_ms_bucket{{le="{label}"}} {count}')
        return "\n".join(lines) + "\n"
