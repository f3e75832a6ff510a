"""Runtime settings for the covert symbiotic-radio simulator."""

from pathlib import Path
from typing import Any, Optional

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from utils.constants import (
    CSV_SIGNIFICANT_DIGITS,
    DEFAULT_BASELINE_DRAWS,
    DEFAULT_CHUNK_SIZE,
    DEFAULT_TRIALS,
)


class Settings(BaseSettings):
    """Application settings loaded from environment variables and .env file."""

    model_config = SettingsConfigDict(
        env_prefix="COVERT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field("WARNING", description="Logging level")
    log_file: Optional[str] = Field(None, description="Log file path")

    # Execution
    workers: int = Field(1, ge=1, le=64, description="Worker threads for sweep points")
    mc_chunk_size: int = Field(DEFAULT_CHUNK_SIZE, ge=1000, description="Monte Carlo trials per chunk")
    default_trials: int = Field(DEFAULT_TRIALS, ge=1, description="Monte Carlo trials per sweep point")
    default_seed: int = Field(2024, ge=0, lt=2**64, description="Default 64-bit seed")
    baseline_draws: int = Field(DEFAULT_BASELINE_DRAWS, ge=1, description="Random-phase benchmark draws")

    # Output
    csv_significant_digits: int = Field(CSV_SIGNIFICANT_DIGITS, ge=3, le=17, description="CSV precision")
    output_dir: Path = Field(Path("./results"), description="Default output directory")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is one of the allowed values."""
        allowed_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in allowed_levels:
            raise ValueError(f"Log level must be one of: {allowed_levels}")
        return v.upper()

    @field_validator("output_dir", mode="before")
    @classmethod
    def validate_output_dir(cls, v: Any) -> Path:
        """Convert string path to Path object."""
        if isinstance(v, str):
            return Path(v)
        return v


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance, loading it if necessary."""
    global _settings
    if _settings is None:
        env_path = Path(__file__).parent.parent / ".env"
        if env_path.exists():
            load_dotenv(env_path)
        _settings = Settings()
    return _settings


def reload_settings() -> Settings:
    """Reload settings from environment variables."""
    global _settings
    _settings = None
    return get_settings()
