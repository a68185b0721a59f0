"""Log-mel spectrogram extraction.

Pinned conventions: centered STFT with reflect padding, periodic Hann window
zero-padded symmetrically to the FFT size, magnitude (not power) spectra,
HTK mel scale, non-normalized triangular filters, natural log with a 1e-10
floor.
"""

from __future__ import annotations

import functools

import numpy as np

from .types import DspError, LOG_FLOOR, MelConfig, MelSpectrogram, SampleRateMismatch, Waveform


class DegenerateFilter(DspError):
    pass


def hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


@functools.lru_cache(maxsize=8)
def mel_filterbank(config: MelConfig) -> np.ndarray:
    """n_mels x (n_fft/2+1) triangular filters, centers equally spaced in mel."""
    edges_mel = np.linspace(hz_to_mel(config.fmin), hz_to_mel(config.fmax), config.n_mels + 2)
    edges_hz = mel_to_hz(edges_mel)
    bin_freqs = np.arange(config.n_bins) * config.sample_rate / config.n_fft
    weights = np.zeros((config.n_mels, config.n_bins))
    for m in range(config.n_mels):
        lower, center, upper = edges_hz[m], edges_hz[m + 1], edges_hz[m + 2]
        rising = (bin_freqs - lower) / (center - lower)
        falling = (upper - bin_freqs) / (upper - center)
        weights[m] = np.maximum(0.0, np.minimum(rising, falling))
        if not np.any(weights[m] > 0.0):
            raise DegenerateFilter(f"mel filter {m} has no nonzero weight (centers {lower:.1f}-{upper:.1f} Hz)")
    weights.setflags(write=False)
    return weights


@functools.lru_cache(maxsize=8)
def analysis_window(win_length: int, n_fft: int) -> np.ndarray:
    window = np.hanning(win_length + 1)[:-1]  # periodic Hann
    pad = (n_fft - win_length) // 2
    padded = np.zeros(n_fft)
    padded[pad:pad + win_length] = window
    padded.setflags(write=False)
    return padded


def reflect_pad(samples: np.ndarray, pad: int) -> np.ndarray:
    """Reflect padding (no edge repeat) that also works when pad >= len."""
    n = samples.size
    if n == 1:
        return np.full(n + 2 * pad, samples[0])
    period = 2 * n - 2
    positions = np.arange(-pad, n + pad) % period
    idx = np.where(positions < n, positions, period - positions)
    return samples[idx]


def frame_signal(samples: np.ndarray, config: MelConfig) -> np.ndarray:
    """Centered frames of length n_fft: reflect-pad by n_fft//2 on both sides."""
    padded = reflect_pad(samples, config.n_fft // 2)
    n_frames = samples.size // config.hop + 1
    frames = np.lib.stride_tricks.sliding_window_view(padded, config.n_fft)[:: config.hop]
    return frames[:n_frames]


def stft_magnitude(wave: Waveform, config: MelConfig) -> np.ndarray:
    """T x (n_fft/2+1) magnitude spectrogram."""
    if wave.sample_rate != config.sample_rate:
        raise SampleRateMismatch(
            f"waveform is {wave.sample_rate} Hz but config expects {config.sample_rate} Hz"
        )
    if len(wave) == 0:
        raise DspError("empty waveform")
    frames = frame_signal(wave.samples, config)
    window = analysis_window(config.win_length, config.n_fft)
    return np.abs(np.fft.rfft(frames * window, axis=1))


def log_mel(wave: Waveform, config: MelConfig | None = None) -> MelSpectrogram:
    """Natural-log mel spectrogram with frame count num_samples//hop + 1."""
    config = config or MelConfig()
    magnitude = stft_magnitude(wave, config)
    mel = magnitude @ mel_filterbank(config).T
    return MelSpectrogram(np.log(np.maximum(mel, LOG_FLOOR)), config)
