"""
Configuration management for the etale-modules toolkit
Centralized configuration handling with environment variables.
"""

import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


@dataclass
class VerifierConfig:
    """Sampling and concurrency settings for verification runs."""
    random_bound: int = 10
    seed: int = 0
    fallback_attempts: int = 10
    max_workers: int = 4


@dataclass
class LoggingConfig:
    """Logging settings shared by the CLI and the API server."""
    level: str = "WARNING"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    file: Optional[str] = None


@dataclass
class APIConfig:
    """API server configuration settings."""
    host: str = "0.0.0.0"
    port: int = 8000
    debug: bool = False
    reload: bool = False
    cors_origins: list = None

    def __post_init__(self):
        if self.cors_origins is None:
            self.cors_origins = ["*"]


@dataclass
class AppConfig:
    """Main application configuration."""
    verifier: VerifierConfig
    logging: LoggingConfig
    api: APIConfig

    app_name: str = "Etale Modules"
    version: str = "1.0.0"
    description: str = "Exact Lie-level verification of etale and prehomogeneous modules"


def load_config() -> AppConfig:
    """Load configuration from environment variables."""

    verifier_config = VerifierConfig(
        random_bound=int(os.getenv("ETALE_RANDOM_BOUND", "10")),
        seed=int(os.getenv("ETALE_SEED", "0")),
        fallback_attempts=int(os.getenv("ETALE_FALLBACK_ATTEMPTS", "10")),
        max_workers=int(os.getenv("ETALE_MAX_WORKERS", "4")),
    )

    logging_config = LoggingConfig(
        level=os.getenv("ETALE_LOG_LEVEL", "WARNING").upper(),
        file=os.getenv("ETALE_LOG_FILE") or None,
    )

    api_config = APIConfig(
        host=os.getenv("API_HOST", "0.0.0.0"),
        port=int(os.getenv("API_PORT", "8000")),
        debug=os.getenv("DEBUG", "false").lower() == "true",
        reload=os.getenv("RELOAD", "false").lower() == "true",
    )

    return AppConfig(
        verifier=verifier_config,
        logging=logging_config,
        api=api_config,
    )


# Global configuration instance
config = load_config()
