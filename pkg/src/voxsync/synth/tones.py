"""Deterministic phoneme-to-tone mapping and the duration schedule.

Every ARPAbet symbol gets a fixed base frequency, 100 + (FNV-1a-64 mod 301)
Hz. The mapping is committed as a golden data file; the hash only exists so
the table can be regenerated and audited.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources

from ..frontend.arpabet import ALL_SYMBOLS, is_vowel_symbol
from ..frontend.phonemize import PAUSE, PHONE, WORD_BOUNDARY

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_MASK = 0xFFFFFFFFFFFFFFFF

TONES_RESOURCE = "phone_tones.tsv"


def fnv1a64(text: str) -> int:
    value = FNV_OFFSET
    for byte in text.encode("utf-8"):
        value ^= byte
        value = (value * FNV_PRIME) & _MASK
    return value


def tone_frequency(symbol: str) -> int:
    return 100 + fnv1a64(symbol) % 301


@functools.lru_cache(maxsize=1)
def tone_table() -> dict[str, int]:
    """symbol -> base frequency in Hz, loaded from the committed table."""
    text = (
        resources.files("voxsync.synth").joinpath("data", TONES_RESOURCE).read_text(encoding="utf-8")
    )
    table: dict[str, int] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        symbol, _, freq = line.partition("\t")
        table[symbol] = int(freq)
    missing = [s for s in ALL_SYMBOLS if s not in table]
    if missing:
        raise ValueError(f"tone table is missing symbols: {missing[:5]}")
    return table


@dataclass(frozen=True)
class AcousticStubConfig:
    """Unit duration schedule (seconds) and harmonic rolloff for stub tones."""

    vowel_s: float = 0.120
    consonant_s: float = 0.080
    pause_s: float = 0.200
    word_boundary_s: float = 0.040
    # Fundamental plus 2 harmonics at -6 dB and -12 dB.
    harmonic_amplitudes: tuple[float, ...] = (1.0, 0.5, 0.25)

    def unit_seconds(self, kind: str, symbol: str = "") -> float:
        if kind == PAUSE:
            return self.pause_s
        if kind == WORD_BOUNDARY:
            return self.word_boundary_s
        if kind == PHONE:
            return self.vowel_s if is_vowel_symbol(symbol) else self.consonant_s
        raise ValueError(f"unknown unit kind {kind!r}")
