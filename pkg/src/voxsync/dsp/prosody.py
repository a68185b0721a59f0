"""Pitch and energy tracks, frame-aligned with the mel spectrogram.

Pitch uses normalized autocorrelation per centered 1200-sample frame. The
detector scans lags from short to long and takes the first local maximum
with normalized correlation >= 0.5 as the period candidate; the frame is
voiced only when that lag falls inside the 80-400 Hz search band (lags 60
to 300 at 24 kHz). Scanning starts well below the band (lag 24) so signals
above 400 Hz are recognized by their short period and reported unvoiced
rather than aliased onto a harmonic.
"""

from __future__ import annotations

import numpy as np

from .mel import reflect_pad, stft_magnitude
from .types import DspError, MelConfig, ProsodyTrack, TokenProsody, Waveform

PITCH_FMIN = 80.0
PITCH_FMAX = 400.0
VOICING_THRESHOLD = 0.5
_SCAN_MIN_LAG = 24  # 1000 Hz; catches periods shorter than the band


class DurationMismatch(DspError):
    pass


def _pitch_frames(samples: np.ndarray, win: int, hop: int) -> np.ndarray:
    if samples.size == 0:
        raise DspError("empty waveform")
    padded = reflect_pad(samples, win // 2)
    n_frames = samples.size // hop + 1
    frames = np.lib.stride_tricks.sliding_window_view(padded, win)[::hop]
    return frames[:n_frames]


def normalized_autocorr(frames: np.ndarray, max_lag: int) -> np.ndarray:
    """r[t, tau] = sum x[n]x[n+tau] / sqrt(E_head(tau) * E_tail(tau)), tau <= max_lag."""
    n_frames, win = frames.shape
    fft_size = 1 << int(np.ceil(np.log2(2 * win)))
    spectrum = np.fft.rfft(frames, n=fft_size, axis=1)
    raw = np.fft.irfft(spectrum * np.conj(spectrum), n=fft_size, axis=1)[:, : max_lag + 1]
    squared = np.concatenate([np.zeros((n_frames, 1)), np.cumsum(frames * frames, axis=1)], axis=1)
    total = squared[:, -1:]
    lags = np.arange(max_lag + 1)
    head = squared[:, win - lags]  # energy of x[0 : win-tau]
    tail = total - squared[:, lags]  # energy of x[tau : win]
    denom = np.sqrt(head * tail)
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.where(denom > 1e-12, raw / np.maximum(denom, 1e-300), 0.0)
    return r


def extract_pitch(
    wave: Waveform,
    win: int = 1200,
    hop: int = 300,
    fmin: float = PITCH_FMIN,
    fmax: float = PITCH_FMAX,
    threshold: float = VOICING_THRESHOLD,
) -> np.ndarray:
    """Per-frame pitch in Hz, 0 for unvoiced frames."""
    sr = wave.sample_rate
    lag_min = int(round(sr / fmax))  # 60 at 24 kHz
    lag_max = int(round(sr / fmin))  # 300 at 24 kHz
    frames = _pitch_frames(wave.samples, win, hop)
    r = normalized_autocorr(frames, lag_max + 1)
    energies = np.sum(frames * frames, axis=1)
    scan_lo = min(_SCAN_MIN_LAG, lag_min)
    # Local maxima of r over lags scan_lo+1 .. lag_max that clear the threshold.
    interior = r[:, scan_lo + 1 : lag_max + 1]
    is_peak = (
        (interior >= threshold)
        & (interior >= r[:, scan_lo : lag_max])
        & (interior >= r[:, scan_lo + 2 : lag_max + 2])
    )
    has_peak = is_peak.any(axis=1)
    first_lag = is_peak.argmax(axis=1) + scan_lo + 1
    voiced = has_peak & (energies >= 1e-12) & (first_lag >= lag_min) & (first_lag <= lag_max)
    return np.where(voiced, sr / np.maximum(first_lag, 1), 0.0)


def extract_energy(wave: Waveform, config: MelConfig | None = None) -> np.ndarray:
    """Per-frame L2 norm of the STFT magnitude vector (mel framing)."""
    config = config or MelConfig(sample_rate=wave.sample_rate)
    magnitude = stft_magnitude(wave, config)
    return np.sqrt(np.sum(magnitude * magnitude, axis=1))


def extract_prosody(wave: Waveform, config: MelConfig | None = None) -> ProsodyTrack:
    config = config or MelConfig(sample_rate=wave.sample_rate)
    return ProsodyTrack(
        pitch_hz=extract_pitch(wave, win=config.win_length, hop=config.hop),
        energy=extract_energy(wave, config),
    )


def token_average(track: ProsodyTrack, durations) -> TokenProsody:
    """Per-token mean energy and mean voiced pitch (0 when the span is unvoiced)."""
    durations = [int(d) for d in durations]
    if any(d < 1 for d in durations):
        raise DurationMismatch("all durations must be >= 1 frame")
    if sum(durations) != len(track):
        raise DurationMismatch(
            f"durations sum to {sum(durations)} but track has {len(track)} frames"
        )
    mean_pitch: list[float] = []
    mean_energy: list[float] = []
    start = 0
    for d in durations:
        pitch_span = track.pitch_hz[start : start + d]
        energy_span = track.energy[start : start + d]
        voiced = pitch_span > 0
        mean_pitch.append(float(pitch_span[voiced].mean()) if voiced.any() else 0.0)
        mean_energy.append(float(energy_span.mean()))
        start += d
    return TokenProsody(tuple(durations), tuple(mean_pitch), tuple(mean_energy))
