"""Process-level settings read from the environment (prefix ``ZOLE_``).

The CLI loads ``.env`` into the environment with python-dotenv before the first read.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="ZOLE_", extra="ignore")

    log_dir: Optional[Path] = Field(None, description="enables per-area rotating log files when set")
    log_retention_days: int = Field(90, ge=1)
    log_level: str = "INFO"
    workers: int = Field(1, ge=1, description="default thread count for training and data generation")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()
