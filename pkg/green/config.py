"""
Settings for the Green toolchain.

Values come from the environment (``GREEN_*``) and are overridden per run by
command-line flags.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

PRELUDE_DIR = Path(__file__).parent / "prelude"


class GreenSettings(BaseSettings):
    """Process-wide defaults for checking and running programs."""

    model_config = SettingsConfigDict(env_prefix="GREEN_", extra="ignore")

    assertions: bool = True
    reflect_classes: bool = True
    reflect_calls: bool = False
    strict_loop_var: bool = False
    color: bool = True
    log_level: str = "WARNING"
    max_call_depth: int = Field(default=600, ge=16)
    prelude_dir: Path = PRELUDE_DIR


@lru_cache(maxsize=1)
def get_settings() -> GreenSettings:
    return GreenSettings()
