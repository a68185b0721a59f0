"""Core signal types and the feature extraction configuration."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_SAMPLE_RATE = 24000

LOG_FLOOR = 1e-10
LOG_FLOOR_VALUE = math.log(LOG_FLOOR)


class DspError(ValueError):
    pass


class SampleRateMismatch(DspError):
    pass


@dataclass(frozen=True)
class Waveform:
    """Mono audio, samples in [-1, 1]."""

    samples: np.ndarray
    sample_rate: int = DEFAULT_SAMPLE_RATE

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise DspError(f"waveform must be mono 1-D, got shape {samples.shape}")
        if self.sample_rate <= 0:
            raise DspError(f"sample_rate must be positive, got {self.sample_rate}")
        if samples.size and not np.all(np.isfinite(samples)):
            raise DspError("waveform contains non-finite samples")
        if samples.size and np.max(np.abs(samples)) > 1.0 + 1e-9:
            raise DspError("waveform samples exceed [-1, 1]")
        object.__setattr__(self, "samples", samples)

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate

    def __len__(self) -> int:
        return self.samples.size


@dataclass(frozen=True)
class MelConfig:
    n_mels: int = 80
    n_fft: int = 2048
    win_length: int = 1200
    hop: int = 300
    fmin: float = 80.0
    fmax: float = 7600.0
    sample_rate: int = DEFAULT_SAMPLE_RATE

    def __post_init__(self):
        if not 0 <= self.fmin < self.fmax <= self.sample_rate / 2:
            raise DspError("require fmin < fmax <= sample_rate/2")
        if self.win_length > self.n_fft:
            raise DspError("require win_length <= n_fft")
        if self.hop > self.win_length:
            raise DspError("require hop <= win_length")

    @property
    def n_bins(self) -> int:
        return self.n_fft // 2 + 1

    def frame_count(self, num_samples: int) -> int:
        # Centered framing with reflect padding.
        return num_samples // self.hop + 1


@dataclass(frozen=True)
class MelSpectrogram:
    """T x n_mels matrix of natural-log mel magnitudes."""

    frames: np.ndarray
    config: MelConfig = field(default_factory=MelConfig)

    def __post_init__(self):
        frames = np.asarray(self.frames, dtype=np.float64)
        if frames.ndim != 2 or frames.shape[1] != self.config.n_mels:
            raise DspError(f"expected (T, {self.config.n_mels}) frames, got {frames.shape}")
        if frames.size and frames.min() < LOG_FLOOR_VALUE - 1e-9:
            raise DspError("log-mel value below the configured floor")
        object.__setattr__(self, "frames", frames)

    @property
    def num_frames(self) -> int:
        return self.frames.shape[0]


@dataclass(frozen=True)
class ProsodyTrack:
    """Per-frame pitch (Hz, 0 = unvoiced) and energy, frame-aligned with mel."""

    pitch_hz: np.ndarray
    energy: np.ndarray

    def __post_init__(self):
        pitch = np.asarray(self.pitch_hz, dtype=np.float64)
        energy = np.asarray(self.energy, dtype=np.float64)
        if pitch.shape != energy.shape or pitch.ndim != 1:
            raise DspError("pitch and energy must be equal-length 1-D arrays")
        object.__setattr__(self, "pitch_hz", pitch)
        object.__setattr__(self, "energy", energy)

    def __len__(self) -> int:
        return self.pitch_hz.size


@dataclass(frozen=True)
class TokenProsody:
    duration_frames: tuple[int, ...]
    mean_pitch_hz: tuple[float, ...]
    mean_energy: tuple[float, ...]
