"""Warm worker pool: a fixed set of threads, each holding fully constructed
synthesizer instances, consuming a bounded FIFO queue.

Submitting to a full queue fails immediately; a queued job that no worker
picks up within the queue timeout is abandoned and fails, so callers never
wait unboundedly for a slot.
"""

from __future__ import annotations

import os
import queue
import threading
import time
from concurrent.futures import Future
from typing import Callable

DEFAULT_QUEUE_DEPTH = 64
DEFAULT_QUEUE_TIMEOUT_S = 5.0


class PoolSaturated(Exception):
    pass


class _Job:
    __slots__ = ("fn", "future", "started", "cancelled", "lock", "enqueued_at", "wall_ms")

    def __init__(self, fn):
        self.fn = fn
        self.future: Future = Future()
        self.started = threading.Event()
        self.cancelled = False
        self.lock = threading.Lock()
        self.enqueued_at = time.perf_counter()
        self.wall_ms = 0.0


_STOP = object()


class WorkerPool:
    def __init__(
        self,
        worker_state_factory: Callable[[], object],
        size: int = 0,
        queue_depth: int = DEFAULT_QUEUE_DEPTH,
        queue_timeout_s: float = DEFAULT_QUEUE_TIMEOUT_S,
    ):
        self.size = size if size > 0 else (os.cpu_count() or 1)
        self.queue_timeout_s = queue_timeout_s
        self._queue: queue.Queue = queue.Queue(maxsize=queue_depth)
        self._threads: list[threading.Thread] = []
        self._factory = worker_state_factory
        self._ready = threading.Barrier(self.size + 1)
        self._warmup_error: BaseException | None = None
        for index in range(self.size):
            thread = threading.Thread(target=self._worker, name=f"pool-worker-{index}", daemon=True)
            thread.start()
            self._threads.append(thread)
        try:
            self._ready.wait(timeout=60)  # all workers warm before the pool accepts jobs
        except threading.BrokenBarrierError:
            raise RuntimeError("worker pool failed to warm up") from self._warmup_error

    def _worker(self):
        try:
            state = self._factory()  # warm start: built once, reused for every job
        except BaseException as exc:
            self._warmup_error = exc
            self._ready.abort()
            return
        try:
            self._ready.wait(timeout=60)
        except threading.BrokenBarrierError:
            return
        while True:
            job = self._queue.get()
            if job is _STOP:
                return
            with job.lock:
                if job.cancelled:
                    continue
                job.started.set()
            start = time.perf_counter()
            try:
                result = job.fn(state)
            except BaseException as exc:
                job.future.set_exception(exc)
            else:
                job.wall_ms = (time.perf_counter() - start) * 1000.0
                job.future.set_result(result)

    def submit(self, fn: Callable) -> _Job:
        job = _Job(fn)
        try:
            self._queue.put_nowait(job)
        except queue.Full:
            raise PoolSaturated(f"queue of depth {self._queue.maxsize} is full") from None
        return job

    def run(self, fn: Callable):
        """Submit and wait; raises PoolSaturated if no worker starts the job in time."""
        job = self.submit(fn)
        if not job.started.wait(self.queue_timeout_s):
            with job.lock:
                if not job.started.is_set():
                    job.cancelled = True
                    raise PoolSaturated(
                        f"job not started within {self.queue_timeout_s:.1f}s queue timeout"
                    )
        return job.future.result()

    def shutdown(self):
        for _ in self._threads:
            self._queue.put(_STOP)
        for thread in self._threads:
            thread.join(timeout=5)
