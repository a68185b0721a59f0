"""Deterministic acoustic model stand-in: phoneme units to log-mel frames.

Each phone renders as a steady harmonic tone (fundamental plus two
harmonics at -6 dB and -12 dB) at its pinned table frequency; pauses and
word boundaries render at the mel floor. Unit lengths follow the duration
schedule, rounded to whole frames.
"""

from __future__ import annotations

import functools

import numpy as np

from ..dsp.mel import analysis_window, mel_filterbank
from ..dsp.types import LOG_FLOOR, LOG_FLOOR_VALUE, MelConfig, MelSpectrogram
from ..frontend.phonemize import PHONE, PhonemeSequence
from .tones import AcousticStubConfig, tone_table


def unit_frames(seconds: float, config: MelConfig) -> int:
    return int(round(seconds * config.sample_rate / config.hop))


@functools.lru_cache(maxsize=1024)
def _tone_mel_column(freq: float, amplitudes: tuple[float, ...], config: MelConfig) -> tuple[float, ...]:
    """Log-mel vector of one analysis window over a steady harmonic tone."""
    window = analysis_window(config.win_length, config.n_fft)
    t = (np.arange(config.n_fft) - config.n_fft // 2) / config.sample_rate
    tone = np.zeros(config.n_fft)
    for k, amp in enumerate(amplitudes, start=1):
        tone += amp * np.sin(2.0 * np.pi * freq * k * t)
    magnitude = np.abs(np.fft.rfft(tone * window))
    mel = mel_filterbank(config) @ magnitude
    return tuple(np.log(np.maximum(mel, LOG_FLOOR)))


def acoustic_stub(
    seq: PhonemeSequence,
    stub_config: AcousticStubConfig | None = None,
    mel_config: MelConfig | None = None,
) -> MelSpectrogram:
    """Render a phoneme sequence to a deterministic log-mel matrix."""
    if not seq.units:
        raise ValueError("cannot render an empty phoneme sequence")
    stub_config = stub_config or AcousticStubConfig()
    mel_config = mel_config or MelConfig()
    table = tone_table()
    rows: list[np.ndarray] = []
    for unit in seq.units:
        n = unit_frames(stub_config.unit_seconds(unit.kind, unit.symbol), mel_config)
        if n <= 0:
            continue
        if unit.kind == PHONE:
            column = np.array(
                _tone_mel_column(float(table[unit.symbol]), stub_config.harmonic_amplitudes, mel_config)
            )
            rows.append(np.tile(column, (n, 1)))
        else:
            rows.append(np.full((n, mel_config.n_mels), LOG_FLOOR_VALUE))
    return MelSpectrogram(np.concatenate(rows, axis=0), mel_config)
