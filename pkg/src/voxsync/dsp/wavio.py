"""Minimal RIFF/WAVE reader for PCM16 mono files."""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .types import DspError, Waveform


class WavFormatError(DspError):
    pass


def decode_wav(data: bytes) -> Waveform:
    """Parse PCM16 little-endian mono RIFF bytes into a Waveform."""
    if len(data) < 12 or data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise WavFormatError("not a RIFF/WAVE file")
    pos = 12
    fmt = None
    samples = None
    while pos + 8 <= len(data):
        chunk_id = data[pos : pos + 4]
        (chunk_size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8 : pos + 8 + chunk_size]
        if chunk_id == b"fmt ":
            if chunk_size < 16:
                raise WavFormatError("fmt chunk too small")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
        elif chunk_id == b"data":
            if fmt is None:
                raise WavFormatError("data chunk before fmt chunk")
            audio_format, channels, sample_rate, _, _, bits = fmt
            if audio_format != 1 or bits != 16:
                raise WavFormatError(f"only PCM16 supported, got format={audio_format} bits={bits}")
            if channels != 1:
                raise WavFormatError(f"only mono supported, got {channels} channels")
            ints = np.frombuffer(body[: len(body) - len(body) % 2], dtype="<i2")
            samples = np.clip(ints.astype(np.float64) / 32767.0, -1.0, 1.0)
            return Waveform(samples, sample_rate)
        pos += 8 + chunk_size + (chunk_size & 1)  # chunks are word-aligned
    raise WavFormatError("missing data chunk")


def read_wav(path: str | Path) -> Waveform:
    return decode_wav(Path(path).read_bytes())
