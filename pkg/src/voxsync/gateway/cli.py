"""Gateway entry point: ``voxsync-gateway --config gateway.toml``."""

from __future__ import annotations

import logging
import signal
import sys

import click

from ..service.config import parse_listen
from ..service.run import serve_blocking
from .config import load_gateway_config
from .keystore import hash_key
from .proxy import create_gateway_app

log = logging.getLogger("voxsync.gateway")


@click.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="Gateway TOML config.")
@click.option("--hash-key", "secret", default=None, help="Print the keystore hash for a secret and exit.")
def main(config_path, secret):
    """Run the api-key authenticating gateway in front of the sync TTS service."""
    if secret is not None:
        click.echo(hash_key(secret))
        return
    if config_path is None:
        raise click.UsageError("--config is required to run the gateway")
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(levelname)s %(message)s")
    config = load_gateway_config(config_path)
    app = create_gateway_app(config)

    def _reload(signum, frame):
        try:
            app.state.gateway.reload_keystore()
        except Exception as exc:  # keep serving with the old key set
            log.error("keystore reload failed: %s", exc)

    if hasattr(signal, "SIGHUP"):
        signal.signal(signal.SIGHUP, _reload)
    host, port = parse_listen(config.listen)
    serve_blocking(app, host, port)


if __name__ == "__main__":
    sys.exit(main())
