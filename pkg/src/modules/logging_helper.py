import logging
import logging.handlers
import os
import sys
from typing import Dict
from typing import Optional

from src.models.settings import Settings

APP_LOGGER = "src"


class LoggingHelper:
    """Helper class for setting up logging.

    Library log levels can be overriden using envvars, e.g.:
    SCIPY_LOG_LEVEL=DEBUG
    """

    def __init__(self, settings: Optional[Settings] = None):
        """Initialise the LoggingHelper.

        Args:
            settings (Settings, optional): Settings to configure logging from.
        """
        self._enabled_loggers: Dict[str, str] = {}
        self.log_file: Optional[str] = None
        if settings is not None:
            self.init_logging(settings)

    def init_logging(self, settings: Settings, stream=None):
        """Initialize logging configuration.

        Sets up the root logger with a console handler on standard error, so
        data written to standard output stays clean, plus a rotating file handler
        when a log directory is configured.
        """
        log_level = settings.log_level.upper()
        numeric_level = getattr(logging, log_level, None)
        if not isinstance(numeric_level, int):
            raise ValueError(f"Invalid log level: {log_level}")

        # Configure root logger
        root_logger = logging.getLogger()
        root_logger.setLevel(numeric_level)

        # Clear existing handlers to prevent duplicates
        root_logger.handlers.clear()

        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )

        console_handler = logging.StreamHandler(stream or sys.stderr)
        console_handler.setFormatter(formatter)
        root_logger.addHandler(console_handler)

        # Rotating file handler (10MB per file, keep last 5 files)
        if settings.log_dir:
            os.makedirs(settings.log_dir, exist_ok=True)
            self.log_file = os.path.join(settings.log_dir, "isph.log")
            file_handler = logging.handlers.RotatingFileHandler(
                self.log_file, maxBytes=10 * 1024 * 1024, backupCount=5
            )
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)

        logging.getLogger(APP_LOGGER).setLevel(numeric_level)

        # Set all existing loggers to WARNING by default
        self._configure_third_party_loggers()

        # Load any explicitly configured loggers from environment
        self._load_enabled_loggers()

        logging.getLogger(__name__).debug(
            f"Logging initialised with level: {log_level} (file: {self.log_file})"
        )

    def _configure_third_party_loggers(self):
        """Set all third-party loggers to WARNING."""
        for name in list(logging.root.manager.loggerDict):
            # Skip our own loggers
            if name == APP_LOGGER or name.startswith(f"{APP_LOGGER}."):
                continue
            logging.getLogger(name).setLevel(logging.WARNING)

    def _load_enabled_loggers(self):
        """Load explicitly configured loggers from environment."""
        for key, value in os.environ.items():
            if key.endswith("_LOG_LEVEL"):
                logger_name = key[:-10].lower()  # Remove _LOG_LEVEL suffix
                self.set_logger_level(logger_name, value)

    def set_logger_level(self, logger_name: str, level: str):
        """Set log level for a specific logger.

        Args:
            logger_name: Name of the logger
            level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        """
        numeric_level = getattr(logging, level.upper(), None)
        if not isinstance(numeric_level, int):
            raise ValueError(f"Invalid log level: {level}")

        logger = logging.getLogger(logger_name)
        logger.setLevel(numeric_level)
        self._enabled_loggers[logger_name] = level
        logging.getLogger(__name__).debug(f"Set {logger_name} log level to {level}")
