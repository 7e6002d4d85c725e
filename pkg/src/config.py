import os
from typing import Optional

from pydantic import ValidationError

from src.errors import ConfigurationError
from src.models.settings import Settings

DEFAULT_ENV_FILE = ".env"


def settings_path() -> str:
    return os.environ.get("ISPH_ENV_FILE", DEFAULT_ENV_FILE)


def load_settings(env_path: Optional[str] = None) -> Settings:
    """Resolve settings: environment variables, then the settings file, then defaults.

    Args:
        env_path: Settings file; defaults to ``ISPH_ENV_FILE`` or ``./.env``. A
            missing file is not an error.

    Raises:
        ConfigurationError: if any resolved value fails validation.
    """
    env_path = env_path or settings_path()
    try:
        if os.path.exists(env_path):
            settings = Settings.from_env_file(env_path)
        else:
            settings = Settings()
        # Environment variables take precedence over the file
        overrides = {
            name: os.environ[name.upper()]
            for name in Settings.model_fields
            if name.upper() in os.environ
        }
        if not overrides:
            return settings
        return Settings.model_validate({**settings.model_dump(), **overrides})
    except ValidationError as e:
        raise ConfigurationError(f"Invalid settings: {e}") from e
