"""Synthesis cache: exact (voice, text) key to stored URL.

Entries live in memory behind an append-only JSON-lines journal that is
replayed at startup, so cache hits survive restarts. An optional LRU cap
bounds the in-memory map; evicted entries stay in the journal and simply
fall out of the map again on the next replay.
"""

from __future__ import annotations

import hashlib
import json
import threading
from collections import OrderedDict
from dataclasses import asdict, dataclass
from pathlib import Path

KEY_SEPARATOR = b"\x1f"


def compute_cache_key(voice: str, text: str) -> str:
    """SHA-256 over UTF-8(voice) | 0x1F | UTF-8(text), lowercase hex."""
    digest = hashlib.sha256()
    digest.update(voice.encode("utf-8"))
    digest.update(KEY_SEPARATOR)
    digest.update(text.encode("utf-8"))
    return digest.hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    key: str
    url: str
    created_at: float
    audio_bytes: int


class JournalCorrupt(Exception):
    """The journal failed to parse; the byte offset of the bad line is reported."""

    def __init__(self, path, offset: int, reason: str):
        super().__init__(f"{path} corrupt at byte {offset}: {reason}")
        self.path = path
        self.offset = offset


_REQUIRED = {"key": str, "url": str, "created_at": (int, float), "audio_bytes": int}


def _parse_line(path, offset: int, line: bytes) -> CacheEntry:
    try:
        record = json.loads(line.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise JournalCorrupt(path, offset, str(exc)) from None
    if not isinstance(record, dict):
        raise JournalCorrupt(path, offset, "record is not an object")
    for field_name, types in _REQUIRED.items():
        if field_name not in record or not isinstance(record[field_name], types):
            raise JournalCorrupt(path, offset, f"bad field {field_name!r}")
    return CacheEntry(
        key=record["key"],
        url=record["url"],
        created_at=float(record["created_at"]),
        audio_bytes=record["audio_bytes"],
    )


class SynthesisCache:
    """Journal-backed key -> CacheEntry map with optional LRU eviction."""

    def __init__(self, journal_path: str | Path, max_entries: int = 0):
        self._lock = threading.RLock()
        self._entries: OrderedDict[str, CacheEntry] = OrderedDict()
        self._max_entries = max_entries
        self._path = Path(journal_path)
        self._replay()
        self._path.parent.mkdir(parents=True, exist_ok=True)
        self._journal = open(self._path, "ab")

    def _replay(self):
        if not self._path.exists():
            return
        offset = 0
        data = self._path.read_bytes()
        for raw_line in data.split(b"\n"):
            if offset >= len(data):
                break
            if raw_line.strip():
                entry = _parse_line(self._path, offset, raw_line)
                self._insert(entry)
            elif raw_line:
                raise JournalCorrupt(self._path, offset, "blank padding inside journal")
            offset += len(raw_line) + 1
        if data and not data.endswith(b"\n"):
            raise JournalCorrupt(self._path, len(data), "truncated final line")

    def _insert(self, entry: CacheEntry):
        self._entries[entry.key] = entry
        self._entries.move_to_end(entry.key)
        if self._max_entries and len(self._entries) > self._max_entries:
            self._entries.popitem(last=False)

    def get(self, key: str) -> CacheEntry | None:
        with self._lock:
            entry = self._entries.get(key)
            if entry is not None:
                self._entries.move_to_end(key)
            return entry

    def put(self, entry: CacheEntry):
        line = json.dumps(asdict(entry), sort_keys=True, separators=(",", ":"))
        with self._lock:
            self._journal.write(line.encode("utf-8") + b"\n")
            self._journal.flush()
            self._insert(entry)

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def close(self):
        with self._lock:
            self._journal.close()
