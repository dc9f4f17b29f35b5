"""
Logging setup shared by the CLI and the API.
Emits JSON log lines through python-json-logger unless disabled.
"""
import logging
import sys
from typing import Optional

from pythonjsonlogger import jsonlogger

from app.config import settings

PLAIN_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
JSON_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'


def configure_logging(level: Optional[str] = None, json_output: Optional[bool] = None) -> None:
    """
    Configure the root logger.

    Args:
        level: Log level name, defaults to settings.LOG_LEVEL
        json_output: Emit JSON lines, defaults to settings.LOG_JSON
    """
    level = (level or settings.LOG_LEVEL).upper()
    if settings.DEBUG:
        level = "DEBUG"
    json_output = settings.LOG_JSON if json_output is None else json_output

    handler = logging.StreamHandler(sys.stderr)
    if json_output:
        handler.setFormatter(jsonlogger.JsonFormatter(JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(PLAIN_FORMAT))

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level)
