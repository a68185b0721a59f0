#!/usr/bin/env python3
"""Generate a small synthetic corpus and run the prep pipeline on it.

Shows the full corpus path end to end: WAVs in, silence trimming, length
filtering, and mel/pitch/energy feature files out. Everything is synthetic
tones so the run is deterministic and instant.

    python scripts/prep_sample_corpus.py [--out sample-corpus]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT / "src"))

from voxsync.dsp import Waveform  # noqa: E402
from voxsync.prep import prep_corpus  # noqa: E402
from voxsync.synth import encode_wav  # noqa: E402


def tone(freq: float, seconds: float, amplitude: float = 0.7) -> np.ndarray:
    t = np.arange(int(seconds * 24000)) / 24000
    return amplitude * np.sin(2 * np.pi * freq * t)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="sample-corpus")
    args = parser.parse_args()

    root = Path(args.out).resolve()
    wav_dir = root / "wav"
    wav_dir.mkdir(parents=True, exist_ok=True)

    silence = np.zeros(12000)
    utterances = {
        "greeting": np.concatenate([silence, tone(180, 1.2), silence]),
        "question": np.concatenate([silence, tone(220, 0.8), np.zeros(6000), tone(260, 0.6), silence]),
        "short_blip": tone(300, 0.05),  # rejected: under 0.1 s
        "dead_air": np.zeros(48000),  # rejected: no speech
    }
    for name, samples in utterances.items():
        (wav_dir / f"{name}.wav").write_bytes(encode_wav(Waveform(samples)))

    transcripts = root / "transcripts.tsv"
    transcripts.write_text(
        "greeting\tguten tag my friend\n"
        "question\tcan you hear me\n"
        "short_blip\toops\n"
        "dead_air\tnothing here\n"
    )

    durations = root / "durations.jsonl"
    # greeting trims to 1.23 s -> 99 frames; split across its 4 tokens.
    durations.write_text(json.dumps({"id": "greeting", "durations": [25, 25, 25, 24]}) + "\n")

    summary = prep_corpus(wav_dir, transcripts, root / "features", durations_path=durations)
    print(f"manifest: {summary['manifest']}")
    for row in summary["rows"]:
        status = row["status"]
        extra = f" ({row['reason']})" if row.get("reason") else ""
        print(f"  {row['id']:<12} {status}{extra:<16} T={row['T']:<5} dur={row['duration_s']}s")
    counts = summary["counts"]
    print(f"accepted {counts['accept']}, rejected {counts['reject']}, errors {counts['error']}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
