"""Application settings and configuration."""
from typing import Dict

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="BCH_",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = "INFO"

    # Encoder Configuration
    default_backend: str = "crt"
    concurrent_branches: bool = False

    # Field Configuration: t -> polynomial text, e.g. {"11": "x^11+x^2+1"}
    prim_poly_overrides: Dict[int, str] = {}

    # Self-test / analysis
    selftest_samples: int = 1000
    selftest_seed: int = 2024
    max_exhaustive_k: int = 20

    # HTTP API
    api_host: str = "0.0.0.0"
    api_port: int = 8083


# Global settings instance
settings = Settings()
