"""
Application logging configuration.

This module provides:
1. Centralized logging setup
2. Configurable log levels via settings
3. Consistent log formatting
4. stderr output for diagnostics, so stdout stays reserved for results

IMPORTANT: ALL APPLICATION LOGGING MUST USE THIS MODULE
- Do NOT create additional log files
- ALL logs go to <LOG_DIR>/app.log only
"""

import logging
import sys
import os
import datetime
from .settings import settings


def cleanup_old_logs(log_file_path):
    """
    Remove log entries from previous days, keeping only the current day's logs.

    Args:
        log_file_path: Path to the log file

    Returns:
        int: Number of lines removed (0 when the file does not exist)
    """
    today = datetime.datetime.now().strftime('%Y-%m-%d')

    if not os.path.exists(log_file_path):
        return 0

    try:
        with open(log_file_path, 'r') as f:
            log_content = f.readlines()

        current_day_logs = []
        for line in log_content:
            # Only check lines that might start with a timestamp
            if len(line) > 10 and line[4:5] == '-' and line[7:8] == '-':
                if line[:10] == today:
                    current_day_logs.append(line)
            else:
                # Keep lines without timestamps (stack traces, wrapped messages)
                current_day_logs.append(line)

        with open(log_file_path, 'w') as f:
            f.writelines(current_day_logs)

        return len(log_content) - len(current_day_logs)
    except OSError as e:
        print(f"Error during log cleanup: {str(e)}", file=sys.stderr)
        return 0


def setup_logging(level=None):
    """
    Configure logging for the application.

    This function:
    1. Sets up the root logger with consistent format
    2. Writes everything (DEBUG and up) to <LOG_DIR>/app.log
    3. Sends warnings and errors to stderr, message only
    4. Returns the "app" logger used by every module

    Args:
        level (Optional[str]): Overrides settings.LOG_LEVEL when given

    Returns:
        logging.Logger: Configured application logger

    Usage:
        from ..core.logging import logger

        logger.info("Solved (2, 3) restricted: PusherWin")
    """
    log_level = getattr(logging, (level or settings.LOG_LEVEL).upper(), logging.INFO)

    logs_dir = settings.LOG_DIR
    os.makedirs(logs_dir, exist_ok=True)

    file_format = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    terminal_format = logging.Formatter('%(message)s')

    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setFormatter(terminal_format)
    stderr_handler.setLevel(logging.WARNING)

    log_file_path = os.path.join(logs_dir, 'app.log')
    cleanup_old_logs(log_file_path)

    file_handler = logging.FileHandler(log_file_path)
    file_handler.setFormatter(file_format)
    file_handler.setLevel(logging.DEBUG)

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
    root_logger.addHandler(stderr_handler)
    root_logger.addHandler(file_handler)

    # Third-party noise
    logging.getLogger('hypothesis').setLevel(logging.WARNING)

    app_logger = logging.getLogger("app")
    app_logger.setLevel(log_level)
    return app_logger


def set_level(level: str) -> None:
    """Change the application log level at runtime (used by --log-level)."""
    logging.getLogger("app").setLevel(getattr(logging, level.upper(), logging.INFO))
    logging.getLogger().setLevel(getattr(logging, level.upper(), logging.INFO))


# Create the global logger instance
logger = setup_logging()

__all__ = ['logger', 'cleanup_old_logs', 'setup_logging', 'set_level']
