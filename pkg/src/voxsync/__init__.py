"""voxsync: synchronous text-to-speech delivery stack.

Subpackages:
  frontend  text normalization, lexicons, G2P fallback
  dsp       waveform features: log-mel, VAD, pitch, energy
  synth     deterministic synthesizer backends and WAV encoding
  service   caching sync-TTS HTTP service with a warm worker pool
  gateway   api-key authenticating reverse proxy
"""

__version__ = "0.1.0"
