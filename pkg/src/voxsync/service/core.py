"""The synchronous TTS service: cache check, warm-pool synthesis, object
storage, cache write-back, URL response."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, replace

from ..frontend import (
    EmptyAfterNormalization,
    LexiconStack,
    MAX_TEXT_CHARS,
    TextTooLong as FrontendTextTooLong,
    default_rules,
    default_stack,
    load_cmu_dict,
    load_custom_lexicon,
    normalize_text,
    phonemize,
)
from ..synth import build_synthesizer, encode_wav
from .cache import CacheEntry, SynthesisCache, compute_cache_key
from .config import ConfigError, ServiceConfig
from .metrics import Metrics
from .pool import PoolSaturated as PoolSaturatedError, WorkerPool
from .singleflight import SingleFlight
from .storage import FilesystemStore, ObjectStore, audio_relpath

log = logging.getLogger("voxsync.service")


class ServiceError(Exception):
    code = "internal"
    http_status = 500


class UnknownVoice(ServiceError):
    code = "unknown_voice"
    http_status = 404


class TextTooLong(ServiceError):
    code = "text_too_long"
    http_status = 400


class EmptyText(ServiceError):
    code = "empty_text"
    http_status = 400


class PoolSaturated(ServiceError):
    code = "pool_saturated"
    http_status = 503


@dataclass(frozen=True)
class SynthesisRequest:
    text: str
    voice: str
    request_id: str = ""


@dataclass(frozen=True)
class SynthesisResult:
    url: str
    cached: bool
    synthesis_ms: int
    audio_duration_ms: int


@dataclass(frozen=True)
class VoiceRuntime:
    voice_id: str
    backend: str
    stack: LexiconStack


def _build_stack(config: ServiceConfig, voice) -> LexiconStack:
    cmu_path = voice.cmu_dict or config.cmu_dict
    if voice.custom_lexicon is None and cmu_path is None:
        stack = default_stack()
    else:
        custom = load_custom_lexicon(voice.custom_lexicon) if voice.custom_lexicon else {}
        cmu = load_cmu_dict(cmu_path) if cmu_path else default_stack().cmu
        stack = LexiconStack(custom=custom, cmu=cmu, g2p_rules=default_rules())
    log.info("lexicon loaded: %d custom entries, %d dictionary entries", len(stack.custom), len(stack.cmu))
    return stack


class SyncTtsService:
    """Holds the cache, object store, voice registry, and the warm pool."""

    def __init__(self, config: ServiceConfig, store: ObjectStore | None = None):
        from ..synth.backends import BACKENDS

        for voice_id, vc in config.voices.items():
            if vc.backend not in BACKENDS:
                raise ConfigError(
                    f"voice {voice_id!r}: unknown backend {vc.backend!r} (known: {sorted(BACKENDS)})"
                )
        self.config = config
        self.metrics = Metrics()
        self.cache = SynthesisCache(config.journal_path, config.max_cache_entries)
        self.store = store or FilesystemStore(config.storage_root, config.base_url)
        self.voices = {
            voice_id: VoiceRuntime(voice_id, vc.backend, _build_stack(config, vc))
            for voice_id, vc in config.voices.items()
        }

        def make_worker_state():
            return {
                voice_id: build_synthesizer(voice_id, runtime.backend)
                for voice_id, runtime in self.voices.items()
            }

        self.pool = WorkerPool(
            make_worker_state,
            size=config.pool_size,
            queue_depth=config.queue_depth,
            queue_timeout_s=config.queue_timeout_s,
        )
        self.flights = SingleFlight()
        log.info(
            "service ready: %d voices, %d cache entries replayed, pool size %d",
            len(self.voices), len(self.cache), self.pool.size,
        )

    def close(self):
        self.pool.shutdown()
        self.cache.close()

    # -- request path ---------------------------------------------------------

    def handle_synthesize(self, req: SynthesisRequest) -> SynthesisResult:
        start = time.perf_counter()
        self.metrics.inc_requests()
        try:
            return self._handle(req)
        except ServiceError as exc:
            self.metrics.inc_error(exc.code)
            raise
        finally:
            self.metrics.observe_latency_ms((time.perf_counter() - start) * 1000.0)

    def _hit_result(self, entry: CacheEntry) -> SynthesisResult:
        duration_ms = int(round(max(0, entry.audio_bytes - 44) / 2 / 24000 * 1000))
        return SynthesisResult(entry.url, cached=True, synthesis_ms=0, audio_duration_ms=duration_ms)

    def _handle(self, req: SynthesisRequest) -> SynthesisResult:
        runtime = self.voices.get(req.voice)
        if runtime is None:
            raise UnknownVoice(f"voice {req.voice!r} is not registered")
        if not req.text:
            raise EmptyText("text must be non-empty")
        if len(req.text) > MAX_TEXT_CHARS:
            raise TextTooLong(f"text is {len(req.text)} characters, limit {MAX_TEXT_CHARS}")

        key = compute_cache_key(req.voice, req.text)
        entry = self.cache.get(key)
        if entry is not None:
            self.metrics.inc_hits()
            return self._hit_result(entry)

        flight, is_leader = self.flights.begin(key)
        if not is_leader:
            result = flight.wait()
            # Coalesced requests are served without their own synthesis; they
            # count as hits so hits + synth + errors keeps equaling requests.
            self.metrics.inc_hits()
            return replace(result, cached=True, synthesis_ms=0)

        try:
            entry = self.cache.get(key)  # may have landed while we raced to lead
            if entry is not None:
                self.metrics.inc_hits()
                result = self._hit_result(entry)
            else:
                result = self._synthesize_and_store(req, runtime, key)
            flight.resolve(result)
            return result
        except BaseException as exc:
            flight.reject(exc)
            raise
        finally:
            self.flights.end(key)

    def _synthesize_and_store(self, req: SynthesisRequest, runtime: VoiceRuntime, key: str) -> SynthesisResult:
        try:
            seq = phonemize(normalize_text(req.text), runtime.stack)
        except EmptyAfterNormalization as exc:
            raise EmptyText(str(exc)) from exc
        except FrontendTextTooLong as exc:
            raise TextTooLong(str(exc)) from exc

        def job(worker_state):
            synth = worker_state[req.voice]
            t0 = time.perf_counter()
            wave = synth.synthesize(seq)
            data = encode_wav(wave)
            self.metrics.inc_synth()
            return data, (time.perf_counter() - t0) * 1000.0, wave.duration_s * 1000.0

        try:
            data, synth_ms, duration_ms = self.pool.run(job)
        except PoolSaturatedError as exc:
            raise PoolSaturated(str(exc)) from exc

        url = self.store.put(audio_relpath(req.voice, key), data)
        self.cache.put(CacheEntry(key=key, url=url, created_at=time.time(), audio_bytes=len(data)))
        log.info(
            "synthesized voice=%s key=%s... bytes=%d synth_ms=%.1f request_id=%s",
            req.voice, key[:16], len(data), synth_ms, req.request_id or "-",
        )
        return SynthesisResult(
            url=url,
            cached=False,
            synthesis_ms=int(round(synth_ms)),
            audio_duration_ms=int(round(duration_ms)),
        )
