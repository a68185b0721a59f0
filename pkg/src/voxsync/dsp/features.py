"""Feature file emission: flat little-endian float32 arrays plus a JSON sidecar."""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .types import MelSpectrogram, ProsodyTrack


def write_f32(path: Path, array: np.ndarray) -> int:
    """Write a row-major little-endian float32 dump; returns element count."""
    data = np.ascontiguousarray(array, dtype="<f4")
    path.write_bytes(data.tobytes())
    return data.size


def read_f32(path: Path, columns: int | None = None) -> np.ndarray:
    flat = np.frombuffer(Path(path).read_bytes(), dtype="<f4").astype(np.float64)
    return flat.reshape(-1, columns) if columns else flat


def write_features(out_dir: Path, utt_id: str, mel: MelSpectrogram, track: ProsodyTrack) -> dict:
    """Write {id}.mel.f32 / {id}.pitch.f32 / {id}.energy.f32 and the {id}.json sidecar."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = {
        "mel": f"{utt_id}.mel.f32",
        "pitch": f"{utt_id}.pitch.f32",
        "energy": f"{utt_id}.energy.f32",
    }
    write_f32(out_dir / names["mel"], mel.frames)
    write_f32(out_dir / names["pitch"], track.pitch_hz)
    write_f32(out_dir / names["energy"], track.energy)
    sidecar = {
        "id": utt_id,
        "config": asdict(mel.config),
        "mel": {"path": names["mel"], "frames": mel.num_frames, "bins": mel.config.n_mels},
        "pitch": {"path": names["pitch"], "frames": len(track)},
        "energy": {"path": names["energy"], "frames": len(track)},
    }
    (out_dir / f"{utt_id}.json").write_text(
        json.dumps(sidecar, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    return sidecar
