"""API gateway: key authentication and path routing."""

from .config import GatewayConfig, GatewayConfigError, Route, default_routes, load_gateway_config, match_route
from .keystore import ALLOW, ApiKeyRecord, DENIED, Keystore, KeystoreError, MISSING, hash_key
from .proxy import create_gateway_app
