from typing import Optional

from core.constants import DEV, PROD
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="NCF_")

    environment: str = DEV

    @field_validator("environment")
    def environment_values(cls, v):
        if v is None:
            return None
        if v not in [PROD, DEV]:
            raise ValueError(f"Incorrect environment value: {v}")
        return v

    project_name: str = "ncfourier"

    # NCF_BUDGET caps oracle instances: word-space size or group order squared
    budget: int = 4096
    degree_bound: int = 3
    truncation_order: Optional[int] = None
    seed: int = 0
    closure_bound: int = 4096
    family_size: int = 20

    log_level: str = "INFO"

    @field_validator("budget", "degree_bound", "closure_bound", "family_size")
    def positive_values(cls, v):
        if v < 1:
            raise ValueError(f"Value must be positive: {v}")
        return v


settings = Settings()

logging_conf = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "console": {
            "format": "{name} {levelname} {asctime} {module} {process:d} {thread:d} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "console",
            "stream": "ext://sys.stderr",
        },
    },
    "loggers": {
        "": {
            "level": settings.log_level,
            "handlers": [
                "console",
            ],
            "propagate": True,
        }
    },
}
