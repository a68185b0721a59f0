"""Gateway configuration: listen address, keystore path, route table."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python 3.10
    import tomli as tomllib


class GatewayConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Route:
    path_prefix: str
    upstream: str  # base URL, no trailing slash


@dataclass(frozen=True)
class GatewayConfig:
    listen: str = "127.0.0.1:8400"
    keystore: str = "keys.tsv"
    demo_dir: str | None = None
    routes: tuple[Route, ...] = field(default_factory=tuple)

    def __post_init__(self):
        prefixes = [r.path_prefix for r in self.routes]
        if len(set(prefixes)) != len(prefixes):
            raise GatewayConfigError("duplicate route prefixes")


def match_route(routes: tuple[Route, ...], path: str) -> Route | None:
    """Longest matching prefix wins."""
    best: Route | None = None
    for route in routes:
        if path.startswith(route.path_prefix):
            if best is None or len(route.path_prefix) > len(best.path_prefix):
                best = route
    return best


def default_routes(upstream: str) -> tuple[Route, ...]:
    return (
        Route("/v1/tts/", upstream),
        Route("/audio/", upstream),
    )


def load_gateway_config(path: str | Path) -> GatewayConfig:
    raw = tomllib.loads(Path(path).read_text(encoding="utf-8"))
    routes = tuple(
        Route(item["prefix"], item["upstream"].rstrip("/")) for item in raw.get("routes", [])
    )
    if not routes and "upstream" in raw:
        routes = default_routes(raw["upstream"].rstrip("/"))
    if not routes:
        raise GatewayConfigError("config needs [[routes]] entries or a top-level upstream")
    return GatewayConfig(
        listen=raw.get("listen", "127.0.0.1:8400"),
        keystore=raw.get("keystore", "keys.tsv"),
        demo_dir=raw.get("demo_dir"),
        routes=routes,
    )
