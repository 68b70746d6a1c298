import os
from os import environ
from typing import Optional
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Worker settings
    threads: int = Field(default=0, ge=0)

    # Optional settings
    log_level: str = "INFO"
    logfire_token: Optional[str] = None

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="HADACODEC_",
        case_sensitive=False,
        extra="ignore",
    )

    @model_validator(mode="after")
    def apply_env(self) -> Self:
        if self.logfire_token:
            environ["LOGFIRE_TOKEN"] = self.logfire_token

        return self

    def worker_count(self) -> int:
        """Number of worker threads; 0 means one per CPU."""
        if self.threads > 0:
            return self.threads
        return os.cpu_count() or 1
