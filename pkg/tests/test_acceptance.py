"""Acceptance suite: every release-blocking behavior, one test per criterion.

Each test name doubles as the criterion label in the terminal summary.
Tolerances are pinned here and nowhere else.
"""

from __future__ import annotations

import hashlib
import subprocess
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from urllib.parse import urlparse

import numpy as np
import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from voxsync.bench import BenchSpec, UNIQUE, percentile, run_bench
from voxsync.cli import main as cli_main
from voxsync.dsp import Waveform, extract_pitch, filter_utterance, log_mel
from voxsync.frontend import ALL_SYMBOLS, LexiconStack, default_rules, normalize_text, phonemize
from voxsync.gateway import GatewayConfig, Route, create_gateway_app, hash_key
from voxsync.service import ServiceConfig, SynthesisRequest, SyncTtsService, create_app
from voxsync.service.run import AppServer, free_port
from voxsync.synth import griffin_lim_vocode

API_KEY = "acceptance-key"
DISABLED = "disabled-key"


def make_config(tmp, port=None, **overrides) -> ServiceConfig:
    port = port or free_port()
    defaults = dict(
        listen=f"127.0.0.1:{port}",
        base_url=f"http://127.0.0.1:{port}",
        storage_root=str(tmp / "store"),
        journal_path=str(tmp / "journal.jsonl"),
        pool_size=2,
    )
    defaults.update(overrides)
    return ServiceConfig(**defaults)


# -- 1. subsecond delivery ----------------------------------------------------


def test_subsecond_delivery_hit_and_miss_p95(tmp_path):
    started = time.monotonic()
    port = free_port()
    service = SyncTtsService(make_config(tmp_path, port=port))
    server = AppServer(create_app(service), port=port).start()
    keys = tmp_path / "keys.tsv"
    keys.write_text(f"{hash_key(API_KEY)}\tacceptance\ttrue\n")
    gateway_config = GatewayConfig(
        keystore=str(keys),
        routes=(Route("/v1/tts/", server.base_url), Route("/audio/", server.base_url)),
    )
    gateway = AppServer(create_gateway_app(gateway_config)).start()
    try:
        texts = [f"please tell me about discovery number {i} in physics" for i in range(250)]
        assert all(len(t) <= 200 for t in texts)
        spec = BenchSpec(
            base_url=gateway.base_url, api_key=API_KEY, voice="einstein-fast",
            texts=texts, requests=250, concurrency=4, mode=UNIQUE,
        )
        cold = run_bench(spec)
        warm = run_bench(spec)
        assert cold.status_counts() == {200: 250}
        assert warm.status_counts() == {200: 250}
        misses = cold.latencies(cached=False)
        hits = warm.latencies(cached=True)
        assert len(misses) == 250 and len(hits) == 250
        assert percentile(misses, 95) < 1000.0
        assert percentile(hits, 95) < 50.0
        assert percentile(hits, 95) < percentile(misses, 50)
        assert time.monotonic() - started < 120.0
    finally:
        gateway.stop()
        server.stop()
        service.close()


# -- 2. cache semantics across restart ----------------------------------------


def test_cache_semantics_miss_hit_restart_hit(tmp_path):
    config = make_config(tmp_path)
    text = {"text": "the exact combination of text and voice", "voice": "einstein-fast"}

    service = SyncTtsService(config)
    with TestClient(create_app(service)) as client:
        first = client.post("/v1/tts/sync", json=text).json()
        second = client.post("/v1/tts/sync", json=text).json()
    assert first["cached"] is False
    assert second["cached"] is True
    assert service.metrics.snapshot()["synth_total"] == 1
    service.close()

    restarted = SyncTtsService(config)
    with TestClient(create_app(restarted)) as client:
        third = client.post("/v1/tts/sync", json=text).json()
    assert third["cached"] is True
    assert restarted.metrics.snapshot()["synth_total"] == 0
    assert first["url"] == second["url"] == third["url"]
    restarted.close()


# -- 3. single flight ----------------------------------------------------------


def test_single_flight_100_randomized_trials(tmp_path):
    service = SyncTtsService(make_config(tmp_path))
    rng = np.random.default_rng(20260808)
    vocabulary = "alpha beta gamma delta epsilon zeta eta theta light mass energy".split()
    try:
        for trial in range(100):
            words = " ".join(rng.choice(vocabulary, size=3))
            text = f"{words} trial {trial}"
            barrier = threading.Barrier(16)

            def fire(_):
                barrier.wait()
                return service.handle_synthesize(SynthesisRequest(text, "einstein-fast"))

            with ThreadPoolExecutor(max_workers=16) as pool:
                results = list(pool.map(fire, range(16)))
            assert len({r.url for r in results}) == 1, f"trial {trial}: URLs diverged"
            assert service.metrics.snapshot()["synth_total"] == trial + 1, f"trial {trial}"
    finally:
        service.close()


# -- 4. lexicon priority property ----------------------------------------------


_words = st.from_regex(r"[a-z']{1,12}", fullmatch=True)
_prons = st.lists(st.sampled_from(ALL_SYMBOLS), min_size=1, max_size=6).map(tuple)


@given(word=_words, custom=_prons, cmu=_prons)
@settings(max_examples=300, deadline=None)
def test_lexicon_priority_custom_wins_cmu_beats_g2p(word, custom, cmu):
    rules = default_rules()
    with_custom = LexiconStack(custom={word: custom}, cmu={word: cmu}, g2p_rules=rules)
    seq = phonemize(normalize_text(word), with_custom)
    assert seq.phones() == custom
    assert seq.word_sources[0][1] == "custom"

    without_custom = LexiconStack(custom={}, cmu={word: cmu}, g2p_rules=rules)
    seq = phonemize(normalize_text(word), without_custom)
    assert seq.phones() == cmu
    assert seq.word_sources[0][1] == "cmu"


# -- 5. DSP oracle equivalence ---------------------------------------------------


def test_dsp_oracle_equivalence():
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(50):
        x = rng.uniform(-1.0, 1.0, 4800)  # 0.2 s
        ours = log_mel(Waveform(x)).frames
        reference = oracles.oracle_log_mel(x)
        assert ours.shape == reference.shape
        worst = max(worst, float(np.abs(ours - reference).max()))
    assert worst < 1e-6, f"max abs deviation {worst}"

    mel = log_mel(Waveform(oracles.sine(440, 1.0)))
    centers = oracles.oracle_filter_centers_hz()
    expected_bin = int(np.argmin([abs(c - 440.0) for c in centers]))
    assert (np.argmax(mel.frames[2:-2], axis=1) == expected_bin).all()

    lengths = np.random.default_rng(7).integers(600, 96000, size=20)
    for n in lengths:
        wave = Waveform(np.zeros(int(n)))
        assert log_mel(wave).num_frames == int(n) // 300 + 1


# -- 6. pitch range ---------------------------------------------------------------


def test_pitch_range_gate():
    saw = extract_pitch(Waveform(oracles.sawtooth(120, 1.0)))
    voiced = saw[saw > 0]
    assert len(voiced) >= 0.9 * len(saw)
    assert np.all(np.abs(voiced - 120.0) <= 3.0)

    low = extract_pitch(Waveform(oracles.sine(60, 1.0)))
    assert (low == 0).all()
    high = extract_pitch(Waveform(oracles.sine(500, 1.0)))
    assert (high == 0).all()


# -- 7. utterance filter boundaries ------------------------------------------------


def test_utterance_filter_boundaries_exact():
    cases = [(2376, False), (2400, True), (960000, True), (960300, False)]
    for samples, expected in cases:
        accepted, _ = filter_utterance(Waveform(np.zeros(samples)))
        assert accepted is expected, f"{samples} samples"


# -- 8. griffin-lim round trip -------------------------------------------------------


def test_griffin_lim_round_trip_three_tones():
    for freq in (220.0, 150.0, 495.0):
        x = 0.6 * oracles.sine(freq, 0.5)
        original = log_mel(Waveform(x))
        rebuilt = log_mel(griffin_lim_vocode(original))
        frames = min(original.num_frames, rebuilt.num_frames)
        error = float(np.abs(original.frames[2 : frames - 2] - rebuilt.frames[2 : frames - 2]).mean())
        assert error <= 1.0, f"{freq} Hz tone: mean abs log-mel error {error}"


# -- 9. synthesis determinism ----------------------------------------------------------


def test_say_determinism_both_backends(tmp_path):
    runner = CliRunner()
    rng = np.random.default_rng(99)
    pool = "guten tag hello world energy light quick brown fox jumps einstein theory".split()
    texts = [" ".join(rng.choice(pool, size=3)) for _ in range(10)]
    for voice in ("einstein-fast", "einstein-glim"):
        for i, text in enumerate(texts):
            digests = []
            for run in range(2):
                out = tmp_path / f"{voice}-{i}-{run}.wav"
                result = runner.invoke(cli_main, ["say", text, "--voice", voice, "--out", str(out)])
                assert result.exit_code == 0, result.output
                digests.append(hashlib.sha256(out.read_bytes()).hexdigest())
            assert digests[0] == digests[1], (voice, text)


def test_say_determinism_across_processes(tmp_path):
    digests = []
    for run in range(2):
        out = tmp_path / f"proc-{run}.wav"
        subprocess.run(
            [sys.executable, "-m", "voxsync.cli", "say", "cross process check", "--out", str(out)],
            check=True,
            capture_output=True,
        )
        digests.append(hashlib.sha256(out.read_bytes()).hexdigest())
    assert digests[0] == digests[1]


# -- 10. gateway auth matrix --------------------------------------------------------------


class _CountingApp:
    """ASGI wrapper counting upstream requests."""

    def __init__(self, app):
        self.app = app
        self.count = 0

    async def __call__(self, scope, receive, send):
        if scope["type"] == "http":
            self.count += 1
        await self.app(scope, receive, send)


def test_gateway_auth_matrix(tmp_path):
    port = free_port()
    service = SyncTtsService(make_config(tmp_path, port=port))
    counting = _CountingApp(create_app(service))
    upstream = AppServer(counting, port=port).start()
    keys = tmp_path / "keys.tsv"
    keys.write_text(
        f"{hash_key(API_KEY)}\tok\ttrue\n{hash_key(DISABLED)}\told\tfalse\n"
    )
    config = GatewayConfig(
        keystore=str(keys),
        routes=(Route("/v1/tts/", upstream.base_url), Route("/audio/", upstream.base_url)),
    )
    try:
        with TestClient(create_gateway_app(config)) as gateway:
            payload = {"text": "auth matrix", "voice": "einstein-fast"}
            # Valid key first, to create the audio object for the GET cells.
            tts = gateway.post("/v1/tts/sync", json=payload, headers={"x-api-key": API_KEY})
            assert tts.status_code == 200
            audio_path = urlparse(tts.json()["url"]).path
            audio = gateway.get(audio_path, headers={"x-api-key": API_KEY})
            assert audio.status_code == 200
            assert audio.content[:4] == b"RIFF"
            assert counting.count == 2

            matrix = [
                (None, 401),
                ("wrong-key", 403),
                (DISABLED, 403),
            ]
            for key, expected_status in matrix:
                for method, path in (("POST", "/v1/tts/sync"), ("GET", audio_path)):
                    before = counting.count
                    headers = {"x-api-key": key} if key else {}
                    kwargs = {"json": payload} if method == "POST" else {}
                    response = gateway.request(method, path, headers=headers, **kwargs)
                    assert response.status_code == expected_status, (key, method)
                    assert counting.count == before, f"upstream contacted on deny: {key}, {method}"
    finally:
        upstream.stop()
        service.close()
