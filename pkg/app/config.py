"""
Configuration management for Structured Pencil Lab.
Handles environment variables and application settings.
"""
from pydantic_settings import BaseSettings
from typing import List


class Settings(BaseSettings):
    """Application settings from environment variables."""

    # Application
    APP_NAME: str = "Structured Pencil Lab"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = True

    # Sampling
    DEFAULT_SEED: int = 20240611
    DEFAULT_BOUND: int = 50
    DEFAULT_TRIALS: int = 200

    # Experiments
    EXPERIMENT_WORKERS: int = 1
    MAX_MISMATCH_EXEMPLARS: int = 10
    MAX_DRAW_ATTEMPTS: int = 64

    # Random congruence transforms (seed_transform)
    TRANSFORM_BOUND: int = 5
    MAX_TRANSFORM_ATTEMPTS: int = 64

    # Determinant identity checks
    APPENDIX_KMAX: int = 4
    APPENDIX_GAMMAS: List[str] = ["1/3", "-2/5", "7/4"]

    # HTTP surface
    API_HOST: str = "0.0.0.0"
    API_PORT: int = 8000

    class Config:
        env_file = ".env"
        case_sensitive = True


# Global settings instance
settings = Settings()
