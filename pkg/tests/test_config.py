import pytest

from voxsync.service.config import (
    ConfigError,
    ServiceConfig,
    apply_env_overrides,
    load_service_config,
    parse_listen,
)


def test_defaults_include_two_voices():
    config = ServiceConfig()
    assert set(config.voices) == {"einstein-fast", "einstein-glim"}


def test_toml_roundtrip(tmp_path):
    path = tmp_path / "svc.toml"
    path.write_text(
        """
listen = "0.0.0.0:9999"
base_url = "http://tts.local:9999"
storage_root = "/data/store"
journal_path = "/data/journal.jsonl"
pool_size = 3
queue_depth = 8
max_cache_entries = 100

[voices.newsreader]
backend = "mock_glim"
"""
    )
    config = load_service_config(path, env={})
    assert config.listen == "0.0.0.0:9999"
    assert config.pool_size == 3
    assert config.queue_depth == 8
    assert config.max_cache_entries == 100
    assert set(config.voices) == {"newsreader"}
    assert config.voices["newsreader"].backend == "mock_glim"


def test_env_overrides(tmp_path):
    config = ServiceConfig()
    overridden = apply_env_overrides(
        config,
        {
            "VOXSYNC_LISTEN": "127.0.0.1:7000",
            "VOXSYNC_POOL_SIZE": "5",
            "VOXSYNC_QUEUE_TIMEOUT_S": "2.5",
            "UNRELATED": "ignored",
        },
    )
    assert overridden.listen == "127.0.0.1:7000"
    assert overridden.pool_size == 5
    assert overridden.queue_timeout_s == 2.5
    assert overridden.base_url == config.base_url


def test_env_overrides_apply_on_top_of_file(tmp_path):
    path = tmp_path / "svc.toml"
    path.write_text('listen = "127.0.0.1:1111"\n')
    config = load_service_config(path, env={"VOXSYNC_LISTEN": "127.0.0.1:2222"})
    assert config.listen == "127.0.0.1:2222"


def test_invalid_voice_id_rejected():
    from voxsync.service.config import VoiceConfig

    with pytest.raises(ConfigError):
        ServiceConfig(voices={"../evil": VoiceConfig(backend="mock_fast")})


def test_voice_requires_backend(tmp_path):
    path = tmp_path / "svc.toml"
    path.write_text("[voices.broken]\ncustom_lexicon = 'x.tsv'\n")
    with pytest.raises(ConfigError):
        load_service_config(path, env={})


@pytest.mark.parametrize("value,expected", [("127.0.0.1:8300", ("127.0.0.1", 8300)), ("0.0.0.0:80", ("0.0.0.0", 80))])
def test_parse_listen(value, expected):
    assert parse_listen(value) == expected


@pytest.mark.parametrize("bad", ["8300", "host:", ":port", "nope"])
def test_parse_listen_rejects(bad):
    with pytest.raises(ConfigError):
        parse_listen(bad)
