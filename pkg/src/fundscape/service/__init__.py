"""HTTP service: FastAPI app, config, and the layout cache."""

from .app import create_app, serve_api
from .cache import ComputeCache
from .config import ServiceConfig, load_config, parse_config_file

__all__ = [
    "ComputeCache",
    "ServiceConfig",
    "create_app",
    "load_config",
    "parse_config_file",
    "serve_api",
]
