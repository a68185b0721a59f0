"""Signal processing: log-mel features, VAD, pitch and energy tracks."""

from .features import read_f32, write_f32, write_features
from .mel import DegenerateFilter, frame_signal, hz_to_mel, log_mel, mel_filterbank, mel_to_hz, reflect_pad, stft_magnitude
from .prosody import (
    DurationMismatch,
    extract_energy,
    extract_pitch,
    extract_prosody,
    normalized_autocorr,
    token_average,
)
from .types import (
    DEFAULT_SAMPLE_RATE,
    DspError,
    LOG_FLOOR,
    LOG_FLOOR_VALUE,
    MelConfig,
    MelSpectrogram,
    ProsodyTrack,
    SampleRateMismatch,
    TokenProsody,
    Waveform,
)
from .vad import (
    MAX_UTTERANCE_S,
    MIN_UTTERANCE_S,
    NoSpeechDetected,
    TooShort,
    detect_voice_activity,
    filter_utterance,
    frame_levels_dbfs,
    frame_size,
    trim_silence,
)
from .wavio import WavFormatError, decode_wav, read_wav
