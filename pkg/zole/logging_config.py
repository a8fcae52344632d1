"""Console and per-area file logging.

Records are routed into per-area directories by logger-name prefix::

    zole.adapt.*                              -> adapt
    zole.datagen.*                            -> datagen
    zole.model.* / zole.graph.* / zole.loss.* -> training

Anything else (cli, imgio, eval, ...) lands in ``shared``. Each area gets::

    <log_dir>/<area>/app.log      INFO and above
    <log_dir>/<area>/error.log    ERROR and above

Rotated daily; rotated files stay inside the area directory.
"""

from __future__ import annotations

import logging
import sys
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path
from typing import Optional

_LOG_FORMAT = "[%(asctime)s] %(levelname)s %(name)s %(message)s"
_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
_MARKER = "_zole_handler"

_AREA_PREFIXES: dict[str, tuple[str, ...]] = {
    "adapt": ("zole.adapt",),
    "datagen": ("zole.datagen",),
    "training": ("zole.model", "zole.graph", "zole.loss"),
}
_HANDLER_SPECS = (("app.log", logging.INFO), ("error.log", logging.ERROR))
_SHARED_AREA = "shared"


def area_for(logger_name: str) -> str:
    """Map a logger name to its owning area (or shared)."""
    for area, prefixes in _AREA_PREFIXES.items():
        for prefix in prefixes:
            if logger_name == prefix or logger_name.startswith(f"{prefix}."):
                return area
    return _SHARED_AREA


class _AreaFilter(logging.Filter):
    def __init__(self, area: str) -> None:
        super().__init__()
        self._area = area

    def filter(self, record: logging.LogRecord) -> bool:
        return area_for(record.name) == self._area


def _build_handler(path: Path, level: int, area: str, retention_days: int) -> TimedRotatingFileHandler:
    handler = TimedRotatingFileHandler(path, when="midnight", backupCount=retention_days, encoding="utf-8")
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(_LOG_FORMAT, datefmt=_DATE_FORMAT))
    handler.addFilter(_AreaFilter(area))
    return handler


def _warn_handler_skipped(path: Path, exc: OSError) -> None:
    print(f"[logging_config] cannot open log file {path}: {exc}; logging to stderr only", file=sys.stderr)


def configure_logging(
    level: str = "INFO",
    log_dir: Optional[Path] = None,
    retention_days: int = 90,
) -> None:
    """Attach a stderr handler and, when ``log_dir`` is set, per-area file handlers.

    Idempotent: calling it again does not duplicate handlers.
    """
    root = logging.getLogger()
    root.setLevel(level.upper())
    if any(getattr(h, _MARKER, False) for h in root.handlers):
        return

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(logging.Formatter(_LOG_FORMAT, datefmt=_DATE_FORMAT))
    setattr(console, _MARKER, True)
    root.addHandler(console)

    if log_dir is None:
        return
    for area in (*_AREA_PREFIXES.keys(), _SHARED_AREA):
        area_dir = Path(log_dir) / area
        for filename, handler_level in _HANDLER_SPECS:
            path = area_dir / filename
            try:
                area_dir.mkdir(parents=True, exist_ok=True)
                handler = _build_handler(path, handler_level, area, retention_days)
            except OSError as exc:
                # 開不了 log 檔不應中斷訓練；退回 stderr
                _warn_handler_skipped(path, exc)
                continue
            setattr(handler, _MARKER, True)
            root.addHandler(handler)
