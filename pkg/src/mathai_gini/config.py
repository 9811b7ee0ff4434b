"""Settings loaded from a YAML file.

Every key is optional; see ``example-config.yml`` at the repository root for
the full layout. The CLI reads the file named by ``--config`` or the
``MATHAI_GINI_CONFIG`` environment variable.
"""

import logging
from pathlib import Path
from typing import Optional

import pydantic
import yaml

from .exceptions import ConfigurationError
from .schemas import (
    ComparisonEngine,
    FitSettings,
    QuadratureSettings,
)

logger = logging.getLogger(__name__)

CONFIG_ENVVAR = "MATHAI_GINI_CONFIG"


class ComparisonSettings(pydantic.BaseModel):
    nu: float = pydantic.Field(3.0, gt=1)
    engine: ComparisonEngine = ComparisonEngine.LOCAL


class LoggingSettings(pydantic.BaseModel):
    level: str = "WARNING"

    @pydantic.validator("level")
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown logging level {value!r}")
        return level


class Settings(pydantic.BaseModel):
    quadrature: QuadratureSettings = QuadratureSettings()
    fitting: FitSettings = FitSettings()
    comparison: ComparisonSettings = ComparisonSettings()
    logging: LoggingSettings = LoggingSettings()

    class Config:
        extra = pydantic.Extra.forbid

    def with_quadrature_tolerance(self, tolerance: float) -> "Settings":
        """Copy with both quadrature tolerances replaced by ``tolerance``."""
        try:
            quadrature = QuadratureSettings(
                **{**self.quadrature.dict(), "abs_tol": tolerance, "rel_tol": tolerance}
            )
        except pydantic.ValidationError as err:
            raise ConfigurationError(f"Invalid quadrature tolerance: {err}") from err
        return self.copy(update={"quadrature": quadrature})


def load_settings(path: Optional[Path] = None) -> Settings:
    if path is None:
        return Settings()
    try:
        with Path(path).open(encoding="utf-8") as fh:
            raw = yaml.safe_load(fh) or {}
    except OSError as err:
        raise ConfigurationError(f"Could not read config file {path}: {err}") from err
    except yaml.YAMLError as err:
        raise ConfigurationError(f"Config file {path} is not valid YAML: {err}") from err
    if not isinstance(raw, dict):
        raise ConfigurationError(f"Config file {path} must contain a mapping")
    try:
        settings = Settings.parse_obj(raw)
    except pydantic.ValidationError as err:
        raise ConfigurationError(f"Invalid config file {path}: {err}") from err
    logger.debug(f"loaded settings from {path}: {settings}")
    return settings
