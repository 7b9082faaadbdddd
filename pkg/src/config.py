from functools import lru_cache
from typing import Any, Literal, Optional

from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.errors import ConfigurationError
from src.logger import get_logger

logger = get_logger("config")

DEFAULT_MAX_EXP = 15
DEFAULT_SEED = 20240917
RESIDUAL_TOL = 1e-9
ROOT_TOL = 1e-12
SEPARATION_TOL = 1e-6
MAX_DOUBLINGS = 200


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="ADG_", env_file=".env", extra="ignore", frozen=True
    )

    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    residual_tol: float = Field(default=RESIDUAL_TOL, gt=0)
    root_tol: float = Field(default=ROOT_TOL, gt=0)
    separation_tol: float = Field(default=SEPARATION_TOL, gt=0)
    max_exp: int = Field(default=DEFAULT_MAX_EXP, ge=1)
    max_doublings: int = Field(default=MAX_DOUBLINGS, ge=1)
    output_format: Optional[Literal["json", "csv"]] = None
    log_level: str = "WARNING"


def load_settings(**overrides: Any) -> Settings:
    """Build settings from the environment, letting non-None overrides win."""
    explicit = {key: value for key, value in overrides.items() if value is not None}
    logger.debug(f"Loading settings with overrides: {sorted(explicit)}")
    try:
        settings = Settings(**explicit)
    except ValidationError as e:
        fields = ", ".join(str(err["loc"][0]) for err in e.errors() if err["loc"])
        logger.error(f"Invalid configuration values: {fields}")
        raise ConfigurationError(f"Invalid configuration values: {fields}") from e

    logger.debug(f"Settings loaded (seed={settings.seed}, max_exp={settings.max_exp})")
    return settings


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
