"""JSON-lines training log: one record per iteration plus validation events."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, ValidationError

from zole.adapt.errors import AdaptError
from zole.schemas.reports import IterationRecord, ValidationRecord

logger = logging.getLogger(__name__)

LogRecord = Union[IterationRecord, ValidationRecord]


class TrainingLog:
    def __init__(self, path: Union[str, Path, None] = None, *, keep_records: Optional[bool] = None):
        """Stream records to ``path``; keep them in memory too when ``keep_records``.

        ``keep_records`` defaults to True only for a log without a file.
        """
        self.path = Path(path) if path is not None else None
        self.keep_records = self.path is None if keep_records is None else keep_records
        self.records: list[LogRecord] = []
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text("", encoding="utf-8")
            logger.info("[adapt] training log: %s", self.path)

    @classmethod
    def discard(cls) -> "TrainingLog":
        """A log that writes nothing and keeps nothing."""
        return cls(keep_records=False)

    def _append(self, record: BaseModel) -> None:
        if self.keep_records:
            self.records.append(record)
        if self.path is None:
            return
        with open(self.path, "a", encoding="utf-8") as f:
            f.write(json.dumps(record.model_dump(mode="json"), ensure_ascii=False) + "\n")

    def log_iteration(self, record: IterationRecord) -> None:
        self._append(record)

    def log_validation(self, record: ValidationRecord) -> None:
        self._append(record)

    @property
    def iterations(self) -> list[IterationRecord]:
        return [r for r in self.records if isinstance(r, IterationRecord)]

    @property
    def validations(self) -> list[ValidationRecord]:
        return [r for r in self.records if isinstance(r, ValidationRecord)]


def read_training_log(path: Union[str, Path]) -> list[LogRecord]:
    """Parse a log written by :class:`TrainingLog`; any malformed line raises AdaptError."""
    records: list[LogRecord] = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                if not isinstance(raw, dict):
                    raise AdaptError(f"{path}:{lineno}: expected a JSON object")
                model = ValidationRecord if raw.get("event") == "val" else IterationRecord
                records.append(model.model_validate(raw))
            except (json.JSONDecodeError, ValidationError) as exc:
                raise AdaptError(f"{path}:{lineno}: invalid training log record: {exc}") from exc
    return records
