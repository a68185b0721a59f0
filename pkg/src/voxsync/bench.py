"""Closed-loop HTTP load harness for the synthesis endpoint.

C workers each run a fetch loop against a shared request counter until N
requests have been issued; every request produces exactly one sample, so
per-status counts always sum to N.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

import httpx

REPEAT = "repeat"
UNIQUE = "unique"


@dataclass(frozen=True)
class Sample:
    status: int  # HTTP status, or 0 for transport errors
    latency_ms: float
    cached: bool


@dataclass
class BenchReport:
    samples: list[Sample]
    wall_s: float
    concurrency: int

    @property
    def n(self) -> int:
        return len(self.samples)

    def status_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for sample in self.samples:
            counts[sample.status] = counts.get(sample.status, 0) + 1
        return counts

    def latencies(self, cached: bool | None = None, ok_only: bool = True) -> list[float]:
        out = []
        for s in self.samples:
            if ok_only and s.status != 200:
                continue
            if cached is not None and s.cached != cached:
                continue
            out.append(s.latency_ms)
        return out

    def hit_ratio(self) -> float:
        ok = [s for s in self.samples if s.status == 200]
        if not ok:
            return 0.0
        return sum(1 for s in ok if s.cached) / len(ok)

    def throughput_rps(self) -> float:
        return self.n / self.wall_s if self.wall_s > 0 else 0.0

    def any_5xx(self) -> bool:
        return any(500 <= s.status <= 599 for s in self.samples)


def percentile(values: list[float], q: float) -> float:
    """Nearest-rank percentile; q in [0, 100]."""
    if not values:
        return float("nan")
    ordered = sorted(values)
    rank = max(1, -(-len(ordered) * q // 100))  # ceil(n*q/100)
    return ordered[int(rank) - 1]


@dataclass
class BenchSpec:
    base_url: str
    api_key: str | None
    voice: str
    texts: list[str]
    requests: int
    concurrency: int
    mode: str = REPEAT
    timeout_s: float = 35.0
    extra_headers: dict = field(default_factory=dict)

    def text_for(self, index: int) -> str:
        if self.mode == REPEAT:
            return self.texts[0]
        if index >= len(self.texts):
            raise ValueError(f"--unique needs >= {self.requests} corpus lines, have {len(self.texts)}")
        return self.texts[index]


def run_bench(spec: BenchSpec) -> BenchReport:
    if not spec.texts:
        raise ValueError("corpus is empty")
    if spec.mode == UNIQUE and len(spec.texts) < spec.requests:
        raise ValueError(f"--unique needs >= {spec.requests} corpus lines, have {len(spec.texts)}")
    counter = {"next": 0}
    counter_lock = threading.Lock()
    samples: list[Sample] = []
    samples_lock = threading.Lock()
    headers = dict(spec.extra_headers)
    if spec.api_key:
        headers["x-api-key"] = spec.api_key
    endpoint = spec.base_url.rstrip("/") + "/v1/tts/sync"

    def worker():
        with httpx.Client(timeout=spec.timeout_s) as client:
            while True:
                with counter_lock:
                    index = counter["next"]
                    if index >= spec.requests:
                        return
                    counter["next"] = index + 1
                payload = {"text": spec.text_for(index), "voice": spec.voice}
                t0 = time.perf_counter()
                try:
                    response = client.post(endpoint, json=payload, headers=headers)
                    ms = (time.perf_counter() - t0) * 1000.0
                    cached = False
                    if response.status_code == 200:
                        cached = bool(response.json().get("cached"))
                    sample = Sample(response.status_code, ms, cached)
                except httpx.HTTPError:
                    sample = Sample(0, (time.perf_counter() - t0) * 1000.0, False)
                with samples_lock:
                    samples.append(sample)

    threads = [threading.Thread(target=worker, daemon=True) for _ in range(spec.concurrency)]
    start = time.perf_counter()
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    return BenchReport(samples=samples, wall_s=time.perf_counter() - start, concurrency=spec.concurrency)


def format_report(report: BenchReport) -> str:
    ok = report.latencies()
    hits = report.latencies(cached=True)
    misses = report.latencies(cached=False)
    lines = [
        f"requests      {report.n}  ({report.throughput_rps():.1f} req/s, "
        f"C={report.concurrency}, wall {report.wall_s:.2f}s)",
        f"status counts {report.status_counts()}",
        f"hit ratio     {report.hit_ratio():.3f}  (hits {len(hits)}, misses {len(misses)})",
    ]
    for name, values in (("all", ok), ("hit", hits), ("miss", misses)):
        if values:
            lines.append(
                f"latency {name:<5} p50 {percentile(values, 50):7.1f} ms   "
                f"p95 {percentile(values, 95):7.1f} ms   p99 {percentile(values, 99):7.1f} ms"
            )
    return "\n".join(lines)
