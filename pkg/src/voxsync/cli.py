"""Operator CLI: ``voxsync serve | prep | say | bench``.

Exit codes: 0 success, 1 runtime error, 2 usage error.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import click

from .bench import BenchSpec, REPEAT, UNIQUE, format_report, run_bench
from .frontend import EmptyAfterNormalization, normalize_text, phonemize
from .prep import prep_corpus
from .service.cache import JournalCorrupt
from .service.config import ServiceConfig, load_service_config, parse_listen
from .service.core import SyncTtsService, _build_stack
from .synth import build_synthesizer, encode_wav


@click.group()
def main():
    """Synchronous TTS delivery toolkit."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Service TOML config; defaults plus VOXSYNC_* env vars when omitted.")
def serve(config_path):
    """Run the sync TTS service."""
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(levelname)s %(message)s")
    from .service.http import create_app
    from .service.run import serve_blocking

    config = load_service_config(config_path)
    try:
        service = SyncTtsService(config)
    except JournalCorrupt as exc:
        raise click.ClickException(str(exc)) from exc
    host, port = parse_listen(config.listen)
    try:
        serve_blocking(create_app(service), host, port)
    finally:
        service.close()


@main.command()
@click.argument("in_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("transcript_manifest", type=click.Path(exists=True, dir_okay=False))
@click.argument("out_dir", type=click.Path(file_okay=False))
@click.option("--durations", "durations_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON-lines per-utterance token durations for prosody averaging.")
@click.option("--workers", default=1, show_default=True, help="Parallel workers across files.")
def prep(in_dir, transcript_manifest, out_dir, durations_path, workers):
    """Featurize a corpus: trim silence, filter lengths, extract mel/pitch/energy."""
    try:
        summary = prep_corpus(in_dir, transcript_manifest, out_dir, durations_path, workers)
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    counts = summary["counts"]
    click.echo(f"prepared {sum(counts.values())} utterances -> {summary['manifest']}")
    click.echo(f"accepted {counts['accept']}  rejected {counts['reject']}  errors {counts['error']}")


@main.command()
@click.argument("text")
@click.option("--voice", default="einstein-fast", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default="out.wav", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Service TOML config supplying the voice registry.")
def say(text, voice, out_path, config_path):
    """Synthesize TEXT locally (no HTTP) and write a WAV file."""
    config = load_service_config(config_path) if config_path else ServiceConfig()
    voice_config = config.voices.get(voice)
    if voice_config is None:
        raise click.UsageError(f"unknown voice {voice!r}; registered: {sorted(config.voices)}")
    stack = _build_stack(config, voice_config)
    try:
        seq = phonemize(normalize_text(text), stack)
    except EmptyAfterNormalization as exc:
        raise click.UsageError(str(exc)) from exc
    click.echo(f"{'word':<20} {'source':<8} phones")
    for word, source in seq.word_sources:
        phones, _ = stack.lookup(word)
        click.echo(f"{word:<20} {source:<8} {' '.join(phones)}")
    synthesizer = build_synthesizer(voice, voice_config.backend)
    wave = synthesizer.synthesize(seq)
    data = encode_wav(wave)
    try:
        Path(out_path).write_bytes(data)
    except OSError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"wrote {out_path}: {len(data)} bytes, {wave.duration_s:.3f}s, backend {voice_config.backend}")


@main.command()
@click.argument("url")
@click.option("--api-key", envvar="VOXSYNC_API_KEY", default=None, help="Key for the gateway (env VOXSYNC_API_KEY).")
@click.option("-c", "--concurrency", default=8, show_default=True)
@click.option("-n", "--requests", "n_requests", default=100, show_default=True)
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Text corpus, one request text per line.")
@click.option("--voice", default="einstein-fast", show_default=True)
@click.option("--unique/--repeat", "unique", default=False,
              help="Each request gets its own corpus line vs all requests reuse the first line.")
def bench(url, api_key, concurrency, n_requests, corpus_path, voice, unique):
    """Closed-loop load test against a running stack; nonzero exit on any 5xx."""
    texts = [line.strip() for line in Path(corpus_path).read_text(encoding="utf-8").splitlines() if line.strip()]
    spec = BenchSpec(
        base_url=url,
        api_key=api_key,
        voice=voice,
        texts=texts,
        requests=n_requests,
        concurrency=concurrency,
        mode=UNIQUE if unique else REPEAT,
    )
    try:
        report = run_bench(spec)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    click.echo(format_report(report))
    if report.any_5xx():
        click.echo("FAIL: 5xx responses observed", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
