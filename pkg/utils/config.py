import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from utils import constants
from utils.errors import InputError

logger = logging.getLogger(__name__)


class Settings(BaseModel):
    """Oracle limits and fuzz defaults, overridable from a key=value file."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    treewidth_limit: int = Field(default=constants.TREEWIDTH_LIMIT, ge=1)
    minor_limit: int = Field(default=constants.MINOR_LIMIT, ge=1)
    max_oracle_n: int = Field(default=constants.MAX_ORACLE_N, ge=0)
    fuzz_seeds: int = Field(default=constants.FUZZ_SEEDS, ge=1)
    fuzz_p: float = Field(default=constants.FUZZ_P, ge=0.0, le=1.0)
    fuzz_n: int = Field(default=constants.FUZZ_N, ge=1)
    log_level: str = constants.LOG_LEVEL
    report_db_url: Optional[str] = None
    record_timing: bool = False


def load_settings(path=None):
    """
    Read settings from `path`, or from the file named by MINORCERT_CONFIG,
    or fall back to the defaults when neither is given.
    """
    if path is None:
        path = os.getenv(constants.CONFIG_ENV_VAR)
    if not path:
        return Settings()

    config_path = Path(path)
    if not config_path.is_file():
        raise InputError(f"config file not found: {config_path}")

    values = {
        key.strip().lower(): value
        for key, value in dotenv_values(config_path).items()
        if value is not None
    }
    try:
        settings = Settings.model_validate(values)
    except ValidationError as exc:
        raise InputError(f"invalid config {config_path}: {exc}") from exc

    logger.debug("loaded settings from %s: %s", config_path, settings)
    return settings
