"""Mel inversion and Griffin-Lim phase recovery.

The vocoder inverts log-mel frames to a linear magnitude spectrogram via
least squares against the filterbank (negatives clamped to zero), then runs
a fixed number of Griffin-Lim iterations starting from zero phase, so the
output is bit-stable for identical inputs.
"""

from __future__ import annotations

import functools

import numpy as np

from ..dsp.mel import analysis_window, frame_signal, mel_filterbank
from ..dsp.types import DspError, MelConfig, MelSpectrogram, Waveform

GRIFFIN_LIM_ITERATIONS = 32
PEAK_TARGET = 0.9
_SILENCE_PEAK = 1e-6


class ConfigMismatch(DspError):
    pass


@functools.lru_cache(maxsize=8)
def _filterbank_pinv(config: MelConfig) -> np.ndarray:
    pinv = np.linalg.pinv(mel_filterbank(config))
    pinv.setflags(write=False)
    return pinv


def mel_to_linear(mel: MelSpectrogram) -> np.ndarray:
    """T x (n_fft/2+1) non-negative magnitude estimate."""
    magnitudes = np.exp(mel.frames) @ _filterbank_pinv(mel.config).T
    return np.maximum(magnitudes, 0.0)


def _stft_complex(samples: np.ndarray, config: MelConfig) -> np.ndarray:
    window = analysis_window(config.win_length, config.n_fft)
    return np.fft.rfft(frame_signal(samples, config) * window, axis=1)


def _istft(spec: np.ndarray, config: MelConfig) -> np.ndarray:
    """Weighted overlap-add inverse of the centered STFT; output (T-1)*hop samples."""
    window = analysis_window(config.win_length, config.n_fft)
    frames = np.fft.irfft(spec, n=config.n_fft, axis=1) * window
    n_frames = frames.shape[0]
    step = -(-config.n_fft // config.hop)  # frames this far apart cannot overlap
    width = step * config.hop
    padded = np.zeros((n_frames, width))
    padded[:, : config.n_fft] = frames
    wsq = np.zeros(width)
    wsq[: config.n_fft] = window * window
    total = (n_frames - 1) * config.hop + width
    acc = np.zeros(total)
    norm = np.zeros(total)
    for s in range(step):
        group = padded[s::step]
        if group.size == 0:
            continue
        start = s * config.hop
        acc[start : start + group.size] += group.ravel()
        norm[start : start + group.size] += np.tile(wsq, group.shape[0])
    out = np.where(norm > 1e-11, acc / np.maximum(norm, 1e-11), 0.0)
    pad = config.n_fft // 2
    return out[pad : pad + (n_frames - 1) * config.hop]


def griffin_lim_vocode(
    mel: MelSpectrogram,
    iterations: int = GRIFFIN_LIM_ITERATIONS,
    config: MelConfig | None = None,
) -> Waveform:
    """Reconstruct a waveform from log-mel frames, peak-normalized to 0.9."""
    config = config or MelConfig()
    if mel.config != config:
        raise ConfigMismatch(f"mel config {mel.config} does not match vocoder config {config}")
    if mel.num_frames < 2:
        raise DspError("need at least two mel frames to vocode")
    target = mel_to_linear(mel)
    spec = target.astype(np.complex128)  # zero initial phase
    for _ in range(iterations):
        estimate = _stft_complex(_istft(spec, config), config)
        magnitudes = np.abs(estimate)
        phase = np.where(magnitudes > 0, estimate / np.maximum(magnitudes, 1e-300), 1.0)
        spec = target * phase
    samples = _istft(spec, config)
    peak = np.max(np.abs(samples)) if samples.size else 0.0
    if peak >= _SILENCE_PEAK:
        samples = samples * (PEAK_TARGET / peak)
    return Waveform(samples, config.sample_rate)
