import threading
from concurrent.futures import ThreadPoolExecutor
from urllib.parse import urlparse

import pytest
from fastapi.testclient import TestClient

from voxsync.service import (
    EmptyText,
    ServiceError,
    SynthesisRequest,
    TextTooLong,
    UnknownVoice,
    create_app,
)
from voxsync.service.cache import compute_cache_key


def req(text="hello world", voice="einstein-fast"):
    return SynthesisRequest(text=text, voice=voice)


class TestHandleSynthesize:
    def test_first_request_synthesizes_once(self, make_service):
        service = make_service()
        result = service.handle_synthesize(req())
        assert result.cached is False
        assert result.synthesis_ms >= 0
        assert result.audio_duration_ms > 0
        assert service.metrics.snapshot()["synth_total"] == 1

    def test_second_identical_request_hits_cache(self, make_service):
        service = make_service()
        first = service.handle_synthesize(req())
        second = service.handle_synthesize(req())
        assert second.cached is True
        assert second.url == first.url
        assert second.synthesis_ms == 0
        assert service.metrics.snapshot()["synth_total"] == 1

    def test_cached_flag_implies_zero_synthesis_ms(self, make_service):
        service = make_service()
        service.handle_synthesize(req())
        for _ in range(3):
            result = service.handle_synthesize(req())
            assert result.cached and result.synthesis_ms == 0

    def test_url_scheme_and_key(self, make_service):
        service = make_service()
        result = service.handle_synthesize(req())
        key = compute_cache_key("einstein-fast", "hello world")
        assert result.url.endswith(f"/audio/einstein-fast/{key[:16]}.wav")

    def test_different_voice_is_different_entry(self, make_service):
        service = make_service()
        a = service.handle_synthesize(req(voice="einstein-fast"))
        b = service.handle_synthesize(req(voice="einstein-glim"))
        assert a.url != b.url
        assert service.metrics.snapshot()["synth_total"] == 2

    def test_exact_text_cache_keying(self, make_service):
        service = make_service()
        service.handle_synthesize(req(text="Hello"))
        result = service.handle_synthesize(req(text="hello"))
        assert result.cached is False  # raw text differs byte for byte

    def test_unknown_voice(self, make_service):
        with pytest.raises(UnknownVoice):
            make_service().handle_synthesize(req(voice="nope"))

    def test_empty_text(self, make_service):
        with pytest.raises(EmptyText):
            make_service().handle_synthesize(req(text=""))

    def test_punctuation_only_text(self, make_service):
        with pytest.raises(EmptyText):
            make_service().handle_synthesize(req(text="?!..."))

    def test_text_too_long(self, make_service):
        with pytest.raises(TextTooLong):
            make_service().handle_synthesize(req(text="a" * 1001))

    def test_cache_survives_restart(self, make_service):
        first = make_service("shared")
        created = first.handle_synthesize(req())
        first.close()
        second = make_service("shared")
        replayed = second.handle_synthesize(req())
        assert replayed.cached is True
        assert replayed.url == created.url
        assert second.metrics.snapshot()["synth_total"] == 0

    def test_cached_bytes_equal_fresh_synthesis(self, make_service, tmp_path):
        service = make_service()
        result = service.handle_synthesize(req())
        key = compute_cache_key("einstein-fast", "hello world")
        stored = service.store.get(f"audio/einstein-fast/{key[:16]}.wav")
        # Deterministic backends: re-synthesizing yields identical bytes.
        from voxsync.frontend import normalize_text, phonemize
        from voxsync.synth import build_synthesizer, encode_wav

        runtime = service.voices["einstein-fast"]
        seq = phonemize(normalize_text("hello world"), runtime.stack)
        fresh = encode_wav(build_synthesizer("einstein-fast", "mock_fast").synthesize(seq))
        assert stored == fresh


class TestBackendSubstitutability:
    @pytest.mark.parametrize("voice", ["einstein-fast", "einstein-glim"])
    def test_full_flow_with_either_backend(self, make_service, voice):
        service = make_service(voice)
        first = service.handle_synthesize(req(text="backend check", voice=voice))
        second = service.handle_synthesize(req(text="backend check", voice=voice))
        assert first.cached is False and second.cached is True
        assert first.url == second.url
        key = compute_cache_key(voice, "backend check")
        data = service.store.get(f"audio/{voice}/{key[:16]}.wav")
        assert data[:4] == b"RIFF"
        assert service.metrics.snapshot()["synth_total"] == 1

    def test_unknown_backend_fails_startup_loudly(self, tmp_path):
        from voxsync.service import ServiceConfig, SyncTtsService
        from voxsync.service.config import ConfigError, VoiceConfig

        config = ServiceConfig(
            storage_root=str(tmp_path / "s"),
            journal_path=str(tmp_path / "j"),
            voices={"broken": VoiceConfig(backend="neural_v9")},
        )
        with pytest.raises(ConfigError, match="neural_v9"):
            SyncTtsService(config)


class TestSingleFlight:
    def test_concurrent_burst_synthesizes_once(self, make_service):
        service = make_service()
        barrier = threading.Barrier(16)

        def fire(_):
            barrier.wait()
            return service.handle_synthesize(req(text="cold key burst"))

        with ThreadPoolExecutor(max_workers=16) as pool:
            results = list(pool.map(fire, range(16)))
        assert len({r.url for r in results}) == 1
        snap = service.metrics.snapshot()
        assert snap["synth_total"] == 1
        assert snap["requests_total"] == 16

    def test_flight_error_propagates_to_followers(self, make_service):
        service = make_service()
        barrier = threading.Barrier(8)

        def fire(_):
            barrier.wait()
            try:
                service.handle_synthesize(req(text="..."))
                return None
            except EmptyText as exc:
                return exc

        with ThreadPoolExecutor(max_workers=8) as pool:
            outcomes = list(pool.map(fire, range(8)))
        assert all(isinstance(o, EmptyText) for o in outcomes)


class TestMetricsAlgebra:
    def test_fresh_start_all_zero(self, make_service):
        snap = make_service().metrics.snapshot()
        assert snap["requests_total"] == snap["cache_hits_total"] == snap["synth_total"] == 0
        assert snap["errors"] == {}
        assert sum(snap["latency_bins"]) == 0

    def test_one_miss_one_hit(self, make_service):
        service = make_service()
        service.handle_synthesize(req())
        service.handle_synthesize(req())
        snap = service.metrics.snapshot()
        assert snap["requests_total"] == 2
        assert snap["cache_hits_total"] == 1
        assert snap["synth_total"] == 1

    def test_buckets_sum_to_requests(self, make_service):
        service = make_service()
        for i in range(5):
            service.handle_synthesize(req(text=f"text number {i}"))
        with pytest.raises(UnknownVoice):
            service.handle_synthesize(req(voice="missing"))
        snap = service.metrics.snapshot()
        assert sum(snap["latency_bins"]) == snap["requests_total"] == 6

    def test_hits_plus_synth_plus_errors_equals_requests(self, make_service):
        service = make_service()
        service.handle_synthesize(req(text="one"))
        service.handle_synthesize(req(text="one"))
        service.handle_synthesize(req(text="two"))
        for bad in ("", "a" * 1001):
            with pytest.raises(ServiceError):
                service.handle_synthesize(req(text=bad))
        snap = service.metrics.snapshot()
        total_errors = sum(snap["errors"].values())
        assert snap["cache_hits_total"] + snap["synth_total"] + total_errors == snap["requests_total"]

    def test_render_format(self, make_service):
        service = make_service()
        service.handle_synthesize(req())
        text = service.metrics.render()
        for line in text.strip().splitlines():
            name, _, value = line.rpartition(" ")
            assert name and value.isdigit()


class TestHttpSurface:
    @pytest.fixture
    def client(self, make_service):
        service = make_service()
        with TestClient(create_app(service)) as client:
            client.service = service
            yield client

    def test_synthesize_roundtrip(self, client):
        response = client.post("/v1/tts/sync", json={"text": "Guten Tag", "voice": "einstein-fast"})
        assert response.status_code == 200
        body = response.json()
        assert set(body) == {"url", "cached", "synthesis_ms", "audio_duration_ms"}
        assert body["cached"] is False

    def test_audio_get_serves_stored_wav(self, client):
        body = client.post("/v1/tts/sync", json={"text": "Guten Tag", "voice": "einstein-fast"}).json()
        path = urlparse(body["url"]).path
        audio = client.get(path)
        assert audio.status_code == 200
        assert audio.headers["content-type"] == "audio/wav"
        assert audio.content[:4] == b"RIFF"
        assert audio.content == client.service.store.get(path.lstrip("/"))

    def test_error_shape_and_statuses(self, client):
        cases = [
            ({"text": "hi", "voice": "ghost"}, 404, "unknown_voice"),
            ({"text": "", "voice": "einstein-fast"}, 400, "empty_text"),
            ({"text": "a" * 1001, "voice": "einstein-fast"}, 400, "text_too_long"),
        ]
        for payload, status, code in cases:
            response = client.post("/v1/tts/sync", json=payload)
            assert response.status_code == status
            assert response.json()["error"] == code
            assert "message" in response.json()

    def test_malformed_json_is_400(self, client):
        response = client.post("/v1/tts/sync", content=b"{nope", headers={"content-type": "application/json"})
        assert response.status_code == 400
        assert response.json()["error"] == "bad_request"

    def test_audio_traversal_rejected(self, client):
        assert client.get("/audio/einstein-fast/deadbeefdeadbeef.wav").status_code == 404
        assert client.get("/audio/unknown/deadbeefdeadbeef.wav").status_code == 404
        assert client.get("/audio/einstein-fast/..%2f..%2fsecret.wav").status_code == 404

    def test_healthz_and_metrics(self, client):
        assert client.get("/healthz").text == "ok\n"
        response = client.get("/metrics")
        assert response.status_code == 200
        assert "requests_total" in response.text

    def test_request_id_echoed(self, client):
        response = client.post(
            "/v1/tts/sync",
            json={"text": "id check", "voice": "einstein-fast"},
            headers={"x-request-id": "req-42"},
        )
        assert response.headers.get("x-request-id") == "req-42"


class TestPoolSaturationHttp:
    def test_saturated_maps_to_503(self, make_service, monkeypatch):
        service = make_service()
        from voxsync.service import pool as pool_module

        def explode(fn):
            raise pool_module.PoolSaturated("full")

        monkeypatch.setattr(service.pool, "run", explode)
        with TestClient(create_app(service)) as client:
            response = client.post("/v1/tts/sync", json={"text": "overflow", "voice": "einstein-fast"})
        assert response.status_code == 503
        assert response.json()["error"] == "pool_saturated"
