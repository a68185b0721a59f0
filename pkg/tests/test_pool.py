import os
import threading
import time

import pytest

from voxsync.service.pool import PoolSaturated, WorkerPool


def make_pool(size=1, depth=4, timeout=0.2):
    return WorkerPool(lambda: {}, size=size, queue_depth=depth, queue_timeout_s=timeout)


def test_worker_state_is_warm_and_reused():
    built = []

    def factory():
        built.append(threading.get_ident())
        return {"id": len(built)}

    pool = WorkerPool(factory, size=2, queue_depth=4)
    assert len(built) == 2  # built at startup, before any job
    seen = {pool.run(lambda state: state["id"]) for _ in range(8)}
    assert seen <= {1, 2}
    pool.shutdown()


def test_fifo_order_with_single_worker():
    pool = make_pool(size=1, depth=16, timeout=5)
    order = []
    gate = threading.Event()
    jobs = [pool.submit(lambda _s, i=i: (gate.wait(), order.append(i))) for i in range(6)]
    gate.set()
    for job in jobs:
        job.future.result(timeout=5)
    assert order == sorted(order)
    pool.shutdown()


def test_full_queue_rejects_immediately():
    pool = make_pool(size=1, depth=64, timeout=5)
    release = threading.Event()
    blocker = pool.submit(lambda _s: release.wait())
    time.sleep(0.05)  # let the worker pick up the blocker
    accepted = [pool.submit(lambda _s: None) for _ in range(64)]
    with pytest.raises(PoolSaturated):
        pool.submit(lambda _s: None)  # 65th instant submission
    release.set()
    for job in accepted:
        job.future.result(timeout=5)
    blocker.future.result(timeout=5)
    pool.shutdown()


def test_queue_timeout_raises_and_job_is_skipped():
    pool = make_pool(size=1, depth=4, timeout=0.1)
    release = threading.Event()
    ran = []
    pool.submit(lambda _s: release.wait())
    time.sleep(0.05)
    with pytest.raises(PoolSaturated):
        pool.run(lambda _s: ran.append("should not run"))
    release.set()
    time.sleep(0.2)
    assert ran == []
    pool.shutdown()


def test_job_exception_propagates():
    pool = make_pool(timeout=5)

    def boom(_state):
        raise RuntimeError("synthetic failure")

    with pytest.raises(RuntimeError, match="synthetic failure"):
        pool.run(boom)
    pool.shutdown()


def test_default_size_is_cpu_count():
    pool = WorkerPool(lambda: None, size=0, queue_depth=2)
    assert pool.size == (os.cpu_count() or 1)
    pool.shutdown()


@pytest.mark.skipif((os.cpu_count() or 1) < 4, reason="throughput scaling needs >= 4 cores")
def test_glim_throughput_scales_with_workers():
    from voxsync.frontend import default_stack, normalize_text, phonemize
    from voxsync.synth import build_synthesizer

    stack = default_stack()
    texts = [f"tell me about topic {i}" for i in range(8)]
    sequences = [phonemize(normalize_text(t), stack) for t in texts]

    def bench(workers: int) -> float:
        pool = WorkerPool(
            lambda: build_synthesizer("v", "mock_glim"), size=workers, queue_depth=64, queue_timeout_s=30
        )
        start = time.perf_counter()
        jobs = [pool.submit(lambda s, q=seq: s.synthesize(q)) for seq in sequences]
        for job in jobs:
            job.future.result(timeout=120)
        wall = time.perf_counter() - start
        pool.shutdown()
        return len(sequences) / wall

    single = bench(1)
    quad = bench(4)
    assert quad >= 2.5 * single
