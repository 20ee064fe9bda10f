"""
Configuration management for Real Betti
Uses pydantic-settings for type-safe configuration from environment variables
"""

from pydantic_settings import BaseSettings, SettingsConfigDict
from pathlib import Path


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables or .env file

    Every field can be overridden with a REALBETTI_ prefixed variable,
    e.g. REALBETTI_CACHE_DIR=/tmp/betti-cache

    Usage:
        from realbetti.config import settings
        print(settings.cache_dir)
    """

    # ==========================================
    # APPLICATION
    # ==========================================
    app_name: str = "Real Betti"
    app_version: str = "0.1.0"
    debug: bool = False
    log_level: str = "WARNING"  # Console level; stdout is reserved for results

    # ==========================================
    # COMPUTATION
    # ==========================================
    safety_margin: int = 10  # Extra coefficients that must vanish above the expected degree
    normalize_degree: bool = True  # d mod r (a >= 1) / d mod 2r (a = 0) before memoizing
    max_workers: int = 4  # Thread fan-out for strata enumeration and verification
    identity_order: int = 100  # Default order for the generating-function identity suite

    # ==========================================
    # CACHE
    # ==========================================
    cache_dir: Path = Path("data/cache")
    cache_enabled: bool = True
    cache_format_version: int = 1

    # ==========================================
    # PATHS
    # ==========================================
    logs_dir: Path = Path("logs")
    golden_tables_path: Path = Path(__file__).parent / "data" / "golden_tables.json"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="REALBETTI_",
        case_sensitive=False,
    )


# Global settings instance
settings = Settings()


def initialize_directories():
    """Create cache and log directories if they don't exist"""
    directories = [
        settings.cache_dir,
        settings.logs_dir,
    ]
    for directory in directories:
        directory.mkdir(parents=True, exist_ok=True)
