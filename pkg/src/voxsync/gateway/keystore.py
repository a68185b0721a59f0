"""API key store: SHA-256 hashes of the secrets, never the secrets themselves.

File format, one record per line: ``key_hash<TAB>label<TAB>enabled`` with
``#`` comments; ``enabled`` is ``true`` or ``false``. Lookups compare the
presented key's hash against every record with constant-time comparisons
and no early exit.
"""

from __future__ import annotations

import hashlib
import hmac
import re
from dataclasses import dataclass
from pathlib import Path

_HASH = re.compile(r"^[0-9a-f]{64}$")

ALLOW = "allow"
MISSING = "missing"
DENIED = "denied"


class KeystoreError(ValueError):
    pass


@dataclass(frozen=True)
class ApiKeyRecord:
    key_hash: str
    label: str
    enabled: bool


def hash_key(secret: str) -> str:
    return hashlib.sha256(secret.encode("utf-8")).hexdigest()


class Keystore:
    def __init__(self, records: list[ApiKeyRecord]):
        self._records = tuple(records)

    def __len__(self) -> int:
        return len(self._records)

    @classmethod
    def load(cls, path: str | Path) -> "Keystore":
        records: list[ApiKeyRecord] = []
        for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise KeystoreError(f"{path}:{line_no}: expected key_hash<TAB>label<TAB>enabled")
            key_hash, label, enabled = fields
            if not _HASH.match(key_hash):
                raise KeystoreError(f"{path}:{line_no}: key_hash must be 64 lowercase hex chars")
            if enabled not in ("true", "false"):
                raise KeystoreError(f"{path}:{line_no}: enabled must be 'true' or 'false'")
            records.append(ApiKeyRecord(key_hash, label, enabled == "true"))
        return cls(records)

    def check(self, presented: str | None) -> tuple[str, str | None]:
        """Returns (ALLOW, label), (DENIED, None) or (MISSING, None)."""
        if presented is None or presented == "":
            return MISSING, None
        candidate = hash_key(presented)
        matched: ApiKeyRecord | None = None
        for record in self._records:  # constant-time scan, no early exit
            if hmac.compare_digest(candidate, record.key_hash):
                matched = record
        if matched is None or not matched.enabled:
            return DENIED, None
        return ALLOW, matched.label
