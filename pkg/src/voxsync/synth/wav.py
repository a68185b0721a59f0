"""PCM16 RIFF/WAVE encoding."""

from __future__ import annotations

import struct

import numpy as np

from ..dsp.types import Waveform

HEADER_BYTES = 44


def encode_wav(wave: Waveform) -> bytes:
    """Mono PCM16 little-endian WAV; samples clamped to [-1, 1] and rounded
    half away from zero."""
    x = np.clip(wave.samples, -1.0, 1.0)
    ints = (np.sign(x) * np.floor(np.abs(x) * 32767.0 + 0.5)).astype("<i2")
    data = ints.tobytes()
    sample_rate = wave.sample_rate
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(data),
        b"WAVE",
        b"fmt ",
        16,
        1,  # PCM
        1,  # mono
        sample_rate,
        sample_rate * 2,  # byte rate
        2,  # block align
        16,  # bits per sample
        b"data",
        len(data),
    )
    return header + data


def wav_duration_ms(payload_bytes: int, sample_rate: int = 24000) -> float:
    """Duration of a PCM16 mono WAV given its total byte size."""
    return max(0, payload_bytes - HEADER_BYTES) / 2 / sample_rate * 1000.0
