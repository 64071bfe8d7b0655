"""
Logging utilities

Provides logging configuration for rankstore. Console output goes to stderr so
reports written to stdout stay byte-identical between runs.
"""

import functools
import logging
import sys
import time
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from pythonjsonlogger import jsonlogger


# Color codes for console output
class LogColors:
    """ANSI color codes for terminal output"""
    RESET = '\033[0m'
    RED = '\033[91m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    CYAN = '\033[96m'
    BOLD = '\033[1m'


class ColoredFormatter(logging.Formatter):
    """Custom formatter with color support for console output"""

    COLORS = {
        'DEBUG': LogColors.CYAN,
        'INFO': LogColors.GREEN,
        'WARNING': LogColors.YELLOW,
        'ERROR': LogColors.RED,
        'CRITICAL': LogColors.RED + LogColors.BOLD
    }

    def format(self, record):
        # Add color to level name
        if hasattr(sys.stderr, 'isatty') and sys.stderr.isatty():
            levelname = record.levelname
            if levelname in self.COLORS:
                record = logging.makeLogRecord(record.__dict__)
                record.levelname = f"{self.COLORS[levelname]}{levelname}{LogColors.RESET}"

        return super().format(record)


def setup_logger(
    name: str = 'rankstore',
    log_file: Optional[str] = None,
    level: int = logging.INFO,
    console_output: bool = True,
    json_format: bool = False,
    format_string: Optional[str] = None,
    max_bytes: int = 10485760,  # 10 MB
    backup_count: int = 5
) -> logging.Logger:
    """
    Setup and configure logger

    Args:
        name: Logger name ('' configures the root logger)
        log_file: Path to a rotating log file; no file output when None
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        console_output: Whether to output to stderr
        json_format: Emit one JSON object per record instead of plain text
        format_string: Custom format string for log messages
        max_bytes: Size at which the log file rotates
        backup_count: Rotated files to keep

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Remove existing handlers to avoid duplicates
    logger.handlers.clear()

    if format_string is None:
        format_string = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    if json_format:
        formatter = jsonlogger.JsonFormatter(
            '%(asctime)s %(name)s %(levelname)s %(message)s',
            datefmt='%Y-%m-%dT%H:%M:%S'
        )
    else:
        formatter = logging.Formatter(fmt=format_string, datefmt='%Y-%m-%d %H:%M:%S')

    if console_output:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        if json_format:
            console_handler.setFormatter(formatter)
        else:
            console_handler.setFormatter(
                ColoredFormatter(fmt=format_string, datefmt='%Y-%m-%d %H:%M:%S')
            )
        logger.addHandler(console_handler)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            path,
            maxBytes=max_bytes,
            backupCount=backup_count,
            encoding='utf-8'
        )
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
        logger.debug(f"Logging to file: {path}")

    return logger


def log_execution_time(func):
    """
    Decorator to log function execution time

    Usage:
        @log_execution_time
        def my_function():
            pass
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        logger = logging.getLogger(func.__module__)

        start_time = time.perf_counter()
        logger.debug(f"Starting execution of {func.__name__}")

        try:
            result = func(*args, **kwargs)
            execution_time = time.perf_counter() - start_time
            logger.info(f"Completed {func.__name__} in {execution_time:.2f} seconds")
            return result

        except Exception as e:
            execution_time = time.perf_counter() - start_time
            logger.error(
                f"Failed {func.__name__} after {execution_time:.2f} seconds: {str(e)}"
            )
            raise

    return wrapper
