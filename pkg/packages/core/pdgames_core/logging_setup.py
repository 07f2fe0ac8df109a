"""JSON-lines logging for solver runs.

Library modules log through ``get_logger(area)``, a child of the ``pdgames``
logger. Nothing is written until the command line calls ``configure_logging``;
every record it handles carries the id of that run.
"""

from __future__ import annotations

import json
import logging
import logging.handlers
import os
import platform
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any


_LOGGER_NAME = "pdgames"
LOG_FILE = "pdgames.log"
# ``extra`` keys copied into the JSON line when a call site passes them
CONTEXT_FIELDS = ("event", "game", "fmt", "status", "player")


def _config_root() -> Path:
    if platform.system() == "Windows":
        base = Path(os.environ.get("APPDATA", Path.home() / "AppData" / "Roaming"))
        return base / "pdgames"
    if platform.system() == "Darwin":
        return Path.home() / "Library" / "Application Support" / "pdgames"
    return Path.home() / ".config" / "pdgames"


def log_dir() -> Path:
    path = _config_root() / "logs"
    path.mkdir(parents=True, exist_ok=True)
    return path


def get_logger(area: str | None = None) -> logging.Logger:
    """The ``pdgames`` logger, or its ``pdgames.<area>`` child."""
    return logging.getLogger(f"{_LOGGER_NAME}.{area}" if area else _LOGGER_NAME)


class RunStamp(logging.Filter):
    def __init__(self, run_id: str | None = None) -> None:
        super().__init__()
        self.run_id = run_id or uuid.uuid4().hex[:12]

    def filter(self, record: logging.LogRecord) -> bool:
        record.run = self.run_id
        return True


def _plain(value: Any) -> Any:
    # enums (Player, SolveStatus, Condition) are logged by value
    return getattr(value, "value", value)


class JsonFormatter(logging.Formatter):
    """One JSON object per record, stamped with the record's own creation time."""

    def format(self, record: logging.LogRecord) -> str:
        root, _, area = record.name.partition(".")
        payload: dict[str, Any] = {
            "ts_utc": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "msg": record.getMessage(),
        }
        if root == _LOGGER_NAME and area:
            payload["area"] = area
        if getattr(record, "run", None):
            payload["run"] = record.run
        for key in CONTEXT_FIELDS:
            if hasattr(record, key):
                payload[key] = _plain(getattr(record, key))
        if record.exc_info:
            payload["exc"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=True, default=str)


def configure_logging(
    keep_files: int = 7,
    console: bool = True,
    level: int | str = logging.INFO,
    directory: Path | None = None,
) -> logging.Logger:
    """Attach the rotating JSON file handler (and a stderr handler for warnings) once per process."""
    logger = get_logger()
    if logger.handlers:
        return logger

    logger.setLevel(level)
    stamp = RunStamp()
    files = logging.handlers.TimedRotatingFileHandler(
        filename=str((directory or log_dir()) / LOG_FILE),
        when="midnight",
        backupCount=max(2, keep_files),
        encoding="utf-8",
    )
    files.setFormatter(JsonFormatter())
    handlers: list[logging.Handler] = [files]
    if console:
        stderr = logging.StreamHandler()
        stderr.setLevel(logging.WARNING)
        stderr.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        handlers.append(stderr)
    for handler in handlers:
        handler.addFilter(stamp)
        logger.addHandler(handler)

    logger.info("logging configured for run %s", stamp.run_id, extra={"event": "logging_configured"})
    return logger
