"""Caching synchronous TTS service."""

from .cache import CacheEntry, JournalCorrupt, SynthesisCache, compute_cache_key
from .config import ConfigError, ServiceConfig, VoiceConfig, load_service_config, parse_listen
from .core import (
    EmptyText,
    PoolSaturated,
    ServiceError,
    SynthesisRequest,
    SynthesisResult,
    SyncTtsService,
    TextTooLong,
    UnknownVoice,
)
from .http import create_app
from .metrics import LATENCY_BOUNDS_MS, Metrics
from .pool import WorkerPool
from .singleflight import Flight, SingleFlight
from .storage import FilesystemStore, IoError, ObjectStore, StorageFull, audio_relpath
