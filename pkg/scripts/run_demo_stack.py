#!/usr/bin/env python3
"""Launch the full local stack: sync TTS service + authenticated gateway.

Creates a scratch work directory with a keystore and storage, optionally
serves the demo UI (if demo/dist exists) under /demo, prints curl-able
URLs, and blocks until interrupted.

    python scripts/run_demo_stack.py [--workdir demo-stack] [--api-key KEY]
"""

from __future__ import annotations

import argparse
import json
import shutil
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT / "src"))

from voxsync.gateway import GatewayConfig, Route, create_gateway_app, hash_key  # noqa: E402
from voxsync.service import ServiceConfig, SyncTtsService, create_app  # noqa: E402
from voxsync.service.config import parse_listen  # noqa: E402
from voxsync.service.run import AppServer, free_port, serve_blocking  # noqa: E402

DEFAULT_KEY = "demo-key"
SUGGESTIONS = [
    "Guten Tag, how are you today?",
    "Tell me about the speed of light.",
    "What is the theory of relativity?",
    "Can you quiz me on physics?",
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workdir", default="demo-stack", help="scratch directory for storage and keys")
    parser.add_argument("--api-key", default=DEFAULT_KEY)
    parser.add_argument("--gateway-listen", default="127.0.0.1:8400")
    args = parser.parse_args()

    workdir = Path(args.workdir).resolve()
    workdir.mkdir(parents=True, exist_ok=True)
    gw_host, gw_port = parse_listen(args.gateway_listen)
    gateway_base = f"http://{gw_host}:{gw_port}"

    service_port = free_port()
    service_config = ServiceConfig(
        listen=f"127.0.0.1:{service_port}",
        base_url=gateway_base,  # returned URLs point at the gateway origin
        storage_root=str(workdir / "store"),
        journal_path=str(workdir / "cache.jsonl"),
    )
    service = SyncTtsService(service_config)
    service_server = AppServer(create_app(service), port=service_port).start()

    keys_path = workdir / "keys.tsv"
    keys_path.write_text(f"{hash_key(args.api_key)}\tdemo\ttrue\n")

    demo_dir = None
    dist = REPO_ROOT / "demo" / "dist"
    if dist.is_dir():
        demo_dir = workdir / "demo"
        if demo_dir.exists():
            shutil.rmtree(demo_dir)
        shutil.copytree(dist, demo_dir)
        (demo_dir / "config.json").write_text(
            json.dumps(
                {
                    "gatewayBaseUrl": "",
                    "apiKey": args.api_key,
                    "voices": sorted(service_config.voices),
                    "suggestions": SUGGESTIONS,
                },
                indent=2,
            )
        )

    upstream = service_server.base_url
    gateway_config = GatewayConfig(
        listen=args.gateway_listen,
        keystore=str(keys_path),
        demo_dir=str(demo_dir) if demo_dir else None,
        routes=(Route("/v1/tts/", upstream), Route("/audio/", upstream)),
    )

    print(f"service   {upstream}  (internal)")
    print(f"gateway   {gateway_base}")
    print(f"api key   {args.api_key}")
    if demo_dir:
        print(f"demo ui   {gateway_base}/demo/")
    else:
        print("demo ui   not built (run `npm run build` in demo/ first)")
    print()
    print("try:")
    print(
        f"  curl -s -X POST {gateway_base}/v1/tts/sync "
        f"-H 'x-api-key: {args.api_key}' "
        '-d \'{"text": "Guten Tag, hello world", "voice": "einstein-fast"}\''
    )
    print()
    try:
        serve_blocking(create_gateway_app(gateway_config), gw_host, gw_port)
    except KeyboardInterrupt:
        pass
    finally:
        service_server.stop()
        service.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
