"""
Logging utility for Real Betti
Centralized logging on top of loguru with different log levels
"""

import sys
from typing import Optional

from loguru import logger as _loguru

from realbetti.config import settings


class Logger:
    """
    Centralized logger for the application

    Console output goes to stderr so that stdout only carries results
    (JSON / CSV / tables) and stays machine-readable.

    Usage:
        from realbetti.utils.logger import logger
        logger.info("Recursion started")
        logger.exception("Cache write failed")
    """

    def __init__(self, name: str = "realbetti"):
        """
        Initialize logger

        Args:
            name: Logger name (shown in the file sink)
        """
        self.name = name
        self._logger = _loguru.bind(component=name)
        self._console_id: Optional[int] = None
        self._file_id: Optional[int] = None
        self._setup_handlers()

    def _setup_handlers(self):
        """Setup console and file sinks"""
        # Drop loguru's default stderr sink so levels are ours
        _loguru.remove()

        level = "DEBUG" if settings.debug else settings.log_level.upper()
        self._console_id = _loguru.add(
            sys.stderr,
            level=level,
            format="[{level}] {message}",
        )

        # File sink (if logs directory exists)
        if settings.logs_dir.exists():
            self._file_id = _loguru.add(
                settings.logs_dir / "realbetti.log",
                level="DEBUG",
                format="{time:YYYY-MM-DD HH:mm:ss} [{level}] {extra[component]}: {message}",
            )

    def set_level(self, level: str):
        """Re-create the console sink with a new level (e.g. from --verbose)"""
        if self._console_id is not None:
            _loguru.remove(self._console_id)
        self._console_id = _loguru.add(
            sys.stderr,
            level=level.upper(),
            format="[{level}] {message}",
        )

    def debug(self, message: str):
        """Log debug message"""
        self._logger.opt(depth=1).debug(message)

    def info(self, message: str):
        """Log info message"""
        self._logger.opt(depth=1).info(message)

    def warning(self, message: str):
        """Log warning message"""
        self._logger.opt(depth=1).warning(message)

    def error(self, message: str):
        """Log error message"""
        self._logger.opt(depth=1).error(message)

    def exception(self, message: str):
        """Log error message with the active traceback"""
        self._logger.opt(depth=1, exception=True).error(message)

    def critical(self, message: str):
        """Log critical message"""
        self._logger.opt(depth=1).critical(message)


# Singleton instance
logger = Logger()
