"""Deterministic synthesizer backends and WAV encoding."""

from .backends import (
    BACKENDS,
    GriffinLimSynthesizer,
    Synthesizer,
    ToneScheduleSynthesizer,
    UnknownBackend,
    build_synthesizer,
)
from .glim import ConfigMismatch, GRIFFIN_LIM_ITERATIONS, griffin_lim_vocode, mel_to_linear
from .stub import acoustic_stub, unit_frames
from .tones import AcousticStubConfig, fnv1a64, tone_frequency, tone_table
from .wav import HEADER_BYTES, encode_wav, wav_duration_ms
