"""
Helper functions for server initialization and utilities.

Includes:
- UTF-8 encoding setup
- Logging configuration
- Batch operation parsing
"""

import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from core import InvalidParameterError, get_config

# ========== Setup Functions ==========


def setup_utf8_encoding() -> None:
    """Configure UTF-8 encoding on Windows."""
    if sys.platform == "win32" and os.environ.get("PYTHONIOENCODING") is None:
        try:
            sys.stdin.reconfigure(encoding="utf-8")  # type: ignore
            sys.stdout.reconfigure(encoding="utf-8")  # type: ignore
            sys.stderr.reconfigure(encoding="utf-8")  # type: ignore
        except AttributeError:
            pass


def setup_logging(level: Optional[str] = None, log_file: bool = True) -> logging.Logger:
    """Configure the root logger from config.json.

    Args:
        level: Level name overriding ``logging_level`` from config.
        log_file: Also write to logs/nzflow.log. The stream handler always
            goes to stderr so stdout stays free for artifacts.
    """
    config = get_config()
    log_level = getattr(logging, (level or config.logging_level).upper(), logging.INFO)

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        log_dir = os.path.join(os.path.dirname(__file__), "..", "..", "logs")
        os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(os.path.join(log_dir, "nzflow.log"), encoding="utf-8"))

    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )

    return logging.getLogger(__name__)


# ========== Parsing Functions ==========


def parse_operations(operations: str) -> List[Dict[str, Any]]:
    """Parse a batch of operations given as a JSON object or array.

    Raises:
        InvalidParameterError: If the text is not JSON objects.
    """
    try:
        data = json.loads(operations)
    except json.JSONDecodeError as e:
        raise InvalidParameterError("operations", operations[:40], f"JSON ({e.msg})")
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list) or not all(isinstance(op, dict) for op in data):
        raise InvalidParameterError("operations", operations[:40], "a JSON object or array of objects")
    return data
