"""Synthesizer backends behind a common two-stage interface.

Both implementations are fully deterministic: no clocks, no randomness,
tone frequencies pinned by the committed table. ``mock_fast`` renders the
tone schedule directly in the time domain; ``mock_glim`` goes through the
log-mel stub and the Griffin-Lim vocoder.
"""

from __future__ import annotations

from typing import Protocol

import numpy as np

from ..dsp.types import MelConfig, TokenProsody, Waveform
from ..frontend.phonemize import PHONE, PhonemeSequence
from .glim import PEAK_TARGET, griffin_lim_vocode
from .stub import acoustic_stub, unit_frames
from .tones import AcousticStubConfig, tone_table

_EDGE_RAMP_S = 0.005  # raised-cosine unit edges, avoids clicks


class Synthesizer(Protocol):
    voice_id: str

    def synthesize(self, seq: PhonemeSequence, prosody: TokenProsody | None = None) -> Waveform:
        ...


class ToneScheduleSynthesizer:
    """Time-domain rendering of the stub's tone schedule (no STFT)."""

    backend_name = "mock_fast"

    def __init__(self, voice_id: str, mel_config: MelConfig | None = None):
        self.voice_id = voice_id
        self.mel_config = mel_config or MelConfig()
        self.stub_config = AcousticStubConfig()
        self.tones = tone_table()

    def synthesize(self, seq: PhonemeSequence, prosody: TokenProsody | None = None) -> Waveform:
        if not seq.units:
            raise ValueError("cannot synthesize an empty phoneme sequence")
        sr = self.mel_config.sample_rate
        hop = self.mel_config.hop
        ramp = int(_EDGE_RAMP_S * sr)
        chunks: list[np.ndarray] = []
        for unit in seq.units:
            frames = unit_frames(self.stub_config.unit_seconds(unit.kind, unit.symbol), self.mel_config)
            n = frames * hop
            if n <= 0:
                continue
            if unit.kind != PHONE:
                chunks.append(np.zeros(n))
                continue
            freq = float(self.tones[unit.symbol])
            t = np.arange(n) / sr
            tone = np.zeros(n)
            for k, amp in enumerate(self.stub_config.harmonic_amplitudes, start=1):
                tone += amp * np.sin(2.0 * np.pi * freq * k * t)
            if n >= 2 * ramp > 0:
                envelope = np.ones(n)
                fade = 0.5 - 0.5 * np.cos(np.pi * np.arange(ramp) / ramp)
                envelope[:ramp] = fade
                envelope[-ramp:] = fade[::-1]
                tone *= envelope
            chunks.append(tone)
        samples = np.concatenate(chunks)
        peak = np.max(np.abs(samples)) if samples.size else 0.0
        if peak >= 1e-6:
            samples = samples * (PEAK_TARGET / peak)
        return Waveform(samples, sr)


class GriffinLimSynthesizer:
    """Two-stage pipeline: log-mel stub, then Griffin-Lim phase recovery."""

    backend_name = "mock_glim"

    def __init__(self, voice_id: str, mel_config: MelConfig | None = None):
        self.voice_id = voice_id
        self.mel_config = mel_config or MelConfig()
        self.stub_config = AcousticStubConfig()

    def synthesize(self, seq: PhonemeSequence, prosody: TokenProsody | None = None) -> Waveform:
        mel = acoustic_stub(seq, self.stub_config, self.mel_config)
        return griffin_lim_vocode(mel, config=self.mel_config)


BACKENDS = {
    ToneScheduleSynthesizer.backend_name: ToneScheduleSynthesizer,
    GriffinLimSynthesizer.backend_name: GriffinLimSynthesizer,
}


class UnknownBackend(ValueError):
    pass


def build_synthesizer(voice_id: str, backend_name: str) -> Synthesizer:
    try:
        factory = BACKENDS[backend_name]
    except KeyError:
        raise UnknownBackend(
            f"backend {backend_name!r} (known: {sorted(BACKENDS)})"
        ) from None
    return factory(voice_id)
