"""
Configuration management using environment variables
"""

from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache

class Settings(BaseSettings):
    # Application
    APP_NAME: str = "S-Hypersimplex Toolkit"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Closed-form enumeration cap (vertices, edges, facets, paths)
    MAX_D: int = 12

    # Oracle cross-checks (brute force, exponential)
    ORACLE_MAX_D: int = 5
    ORACLE_MAX_POINTS: int = 40
    ORACLE_MAX_DIM: int = 6

    # Pulling triangulations
    PULL_MAX_VERTICES: int = 64
    VOLUME_MAX_D: int = 6

    # Monotone path polytopes
    FIBER_MAX_D: int = 5
    FIBER_SWEEP_MAX_D: int = 4
    MAX_LISTED: int = 100000

    # Brute-force permutation enumeration (descent counts)
    PERMUTATION_MAX_D: int = 8

    # Random pull orders
    DEFAULT_SEED: int = 0
    RANDOM_ORDERS: int = 20

    model_config = SettingsConfigDict(
        env_prefix = "SHYP_",
        env_file = ".env",
        env_file_encoding = "utf-8",
        extra = "ignore",
        case_sensitive = True
    )

@lru_cache()
def get_settings() -> Settings:
    return Settings()

settings = get_settings()
