"""Corpus preparation: trim, length-filter, and featurize recordings.

Per-file failures are recorded in the output manifest and never abort the
batch. Reruns are byte-identical: ids are processed in sorted order, rows
carry no timestamps, and all feature math is deterministic.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .dsp import (
    DspError,
    MelConfig,
    NoSpeechDetected,
    TooShort,
    extract_prosody,
    filter_utterance,
    log_mel,
    read_wav,
    token_average,
    trim_silence,
    write_features,
)

MANIFEST_NAME = "manifest.jsonl"


def read_transcripts(path: str | Path) -> dict[str, str]:
    """TSV manifest: id<TAB>transcript, '#' comments."""
    entries: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        utt_id, sep, text = line.partition("\t")
        if not sep:
            raise ValueError(f"{path}:{line_no}: expected id<TAB>transcript")
        entries[utt_id.strip()] = text.strip()
    return entries


def read_durations(path: str | Path) -> dict[str, list[int]]:
    """JSON-lines: {"id": ..., "durations": [frames per token]}."""
    entries: dict[str, list[int]] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        entries[record["id"]] = [int(d) for d in record["durations"]]
    return entries


def _prep_one(utt_id: str, wav_path: Path, out_dir: Path, durations: list[int] | None) -> dict:
    row: dict = {"id": utt_id, "path": str(wav_path), "T": 0, "duration_s": 0.0}
    try:
        wave = read_wav(wav_path)
    except (OSError, DspError) as exc:
        row.update(status="error", reason=f"unreadable: {exc}")
        return row
    if wave.sample_rate != MelConfig().sample_rate:
        row.update(status="error", reason=f"sample_rate_mismatch: {wave.sample_rate}")
        return row
    try:
        trimmed = trim_silence(wave)
    except NoSpeechDetected:
        row.update(status="reject", reason="no_speech")
        return row
    except TooShort:
        row.update(status="reject", reason="too_short")
        return row
    accepted, reason = filter_utterance(trimmed)
    row["duration_s"] = round(trimmed.duration_s, 6)
    if not accepted:
        row.update(status="reject", reason=reason)
        return row
    mel = log_mel(trimmed)
    track = extract_prosody(trimmed)
    write_features(out_dir, utt_id, mel, track)
    row.update(T=mel.num_frames, status="accept", reason=None)
    if durations is not None:
        try:
            tokens = token_average(track, durations)
        except DspError as exc:
            row["token_prosody_error"] = str(exc)
        else:
            (out_dir / f"{utt_id}.tokens.json").write_text(
                json.dumps(
                    {
                        "id": utt_id,
                        "duration_frames": list(tokens.duration_frames),
                        "mean_pitch_hz": [round(v, 6) for v in tokens.mean_pitch_hz],
                        "mean_energy": [round(v, 6) for v in tokens.mean_energy],
                    },
                    sort_keys=True,
                )
                + "\n",
                encoding="utf-8",
            )
    return row


def prep_corpus(
    in_dir: str | Path,
    transcript_manifest: str | Path,
    out_dir: str | Path,
    durations_path: str | Path | None = None,
    workers: int = 1,
) -> dict:
    in_dir, out_dir = Path(in_dir), Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    transcripts = read_transcripts(transcript_manifest)
    durations = read_durations(durations_path) if durations_path else {}
    ordered_ids = sorted(transcripts)

    def process(utt_id: str) -> dict:
        return _prep_one(utt_id, in_dir / f"{utt_id}.wav", out_dir, durations.get(utt_id))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(process, ordered_ids))
    else:
        rows = [process(utt_id) for utt_id in ordered_ids]

    manifest_path = out_dir / MANIFEST_NAME
    with open(manifest_path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
    counts = {"accept": 0, "reject": 0, "error": 0}
    for row in rows:
        counts[row["status"]] += 1
    return {"counts": counts, "rows": rows, "manifest": str(manifest_path)}
