"""Object storage behind a small interface; the shipped backend is a local
filesystem tree. Writes are atomic (temp file + rename), so any URL ever
handed out serves a complete object."""

from __future__ import annotations

import abc
import errno
import os
import threading
from pathlib import Path


class StorageError(Exception):
    pass


class StorageFull(StorageError):
    pass


class IoError(StorageError):
    pass


def audio_relpath(voice: str, key: str) -> str:
    """Stable object path for a synthesis result: first 16 hex chars of the key."""
    return f"audio/{voice}/{key[:16]}.wav"


class ObjectStore(abc.ABC):
    @abc.abstractmethod
    def put(self, relpath: str, data: bytes) -> str:
        """Store bytes at relpath, returning the public URL."""

    @abc.abstractmethod
    def get(self, relpath: str) -> bytes:
        ...

    @abc.abstractmethod
    def exists(self, relpath: str) -> bool:
        ...

    @abc.abstractmethod
    def url_for(self, relpath: str) -> str:
        ...


class FilesystemStore(ObjectStore):
    def __init__(self, root: str | Path, base_url: str):
        self.root = Path(root)
        self.base_url = base_url.rstrip("/")
        self._counter = 0
        self._lock = threading.Lock()

    def _local_path(self, relpath: str) -> Path:
        return self.root / relpath

    def put(self, relpath: str, data: bytes) -> str:
        path = self._local_path(relpath)
        with self._lock:
            self._counter += 1
            serial = self._counter
        tmp = path.with_suffix(f".tmp.{os.getpid()}.{serial}")
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(tmp, "wb") as fh:
                fh.write(data)
            os.replace(tmp, path)
        except OSError as exc:
            tmp.unlink(missing_ok=True)
            if exc.errno == errno.ENOSPC:
                raise StorageFull(str(exc)) from exc
            raise IoError(str(exc)) from exc
        return self.url_for(relpath)

    def get(self, relpath: str) -> bytes:
        try:
            return self._local_path(relpath).read_bytes()
        except OSError as exc:
            raise IoError(str(exc)) from exc

    def exists(self, relpath: str) -> bool:
        return self._local_path(relpath).is_file()

    def url_for(self, relpath: str) -> str:
        return f"{self.base_url}/{relpath}"
