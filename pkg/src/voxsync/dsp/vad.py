"""Energy-gate voice activity detection and silence trimming.

Frames are 30 ms, non-overlapping. A frame counts as speech when its RMS
level (dBFS) exceeds the 10th-percentile frame level by more than 6 dB and
sits above an absolute silence floor. Two special cases are pinned:

  * signals whose frame levels span less than the 6 dB gate (near-constant
    signals) are treated as all speech, floor permitting;
  * non-speech gaps of up to three frames between speech frames are bridged,
    so short intra-utterance dips do not split a speech run.
"""

from __future__ import annotations

import numpy as np

from .types import DspError, Waveform

FRAME_SECONDS = 0.030
GATE_DB = 6.0
FLOOR_DBFS = -60.0
HANGOVER_FRAMES = 3

_EPS = 1e-10


class TooShort(DspError):
    pass


class NoSpeechDetected(DspError):
    pass


def frame_size(sample_rate: int) -> int:
    return int(round(FRAME_SECONDS * sample_rate))


def frame_levels_dbfs(wave: Waveform) -> np.ndarray:
    """Per-frame RMS in dBFS; trailing samples short of a frame are dropped."""
    size = frame_size(wave.sample_rate)
    n_frames = len(wave) // size
    if n_frames == 0:
        raise TooShort(f"need at least {size} samples, got {len(wave)}")
    frames = wave.samples[: n_frames * size].reshape(n_frames, size)
    rms = np.sqrt(np.mean(frames * frames, axis=1))
    return 20.0 * np.log10(np.maximum(rms, _EPS))


def detect_voice_activity(wave: Waveform, gate_db: float = GATE_DB) -> np.ndarray:
    """Boolean speech mask over 30 ms frames."""
    levels = frame_levels_dbfs(wave)
    above_floor = levels > FLOOR_DBFS
    if levels.max() - levels.min() < gate_db:
        speech = above_floor.copy()
    else:
        threshold = np.percentile(levels, 10) + gate_db
        speech = (levels > threshold) & above_floor
    return _bridge_gaps(speech, HANGOVER_FRAMES)


def _bridge_gaps(speech: np.ndarray, max_gap: int) -> np.ndarray:
    """Mark non-speech runs of <= max_gap frames between speech as speech."""
    out = speech.copy()
    idx = np.flatnonzero(speech)
    for a, b in zip(idx[:-1], idx[1:]):
        if 1 < b - a <= max_gap + 1:
            out[a + 1 : b] = True
    return out


def trim_silence(wave: Waveform, gate_db: float = GATE_DB) -> Waveform:
    """Drop leading and trailing non-speech frames; interior silence is kept.

    Samples past the last whole frame were never classified, so they are
    kept whenever the final classified frame is speech.
    """
    speech = detect_voice_activity(wave, gate_db)
    idx = np.flatnonzero(speech)
    if idx.size == 0:
        raise NoSpeechDetected("no speech frames found")
    size = frame_size(wave.sample_rate)
    start = int(idx[0]) * size
    if int(idx[-1]) == len(speech) - 1:
        end = len(wave)
    else:
        end = (int(idx[-1]) + 1) * size
    return Waveform(wave.samples[start:end], wave.sample_rate)


MIN_UTTERANCE_S = 0.1
MAX_UTTERANCE_S = 40.0


def filter_utterance(wave: Waveform) -> tuple[bool, str | None]:
    """Accept utterances of 0.1 to 40 seconds, bounds inclusive."""
    duration = wave.duration_s
    if duration < MIN_UTTERANCE_S:
        return False, "too_short"
    if duration > MAX_UTTERANCE_S:
        return False, "too_long"
    return True, None
