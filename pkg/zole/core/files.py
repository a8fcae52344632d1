"""Shared helpers for writing artifacts (maps, checkpoints, manifests) to disk."""

from __future__ import annotations

import json
from datetime import date, datetime
from pathlib import Path
from typing import Any


def json_default(value: Any) -> Any:
    if isinstance(value, (datetime, date)):
        return value.isoformat()
    if hasattr(value, "tolist"):
        return value.tolist()
    return str(value)


def write_bytes_atomic(target_path: Path, payload: bytes) -> None:
    """Write through a sibling ``.tmp`` file so readers never see a partial artifact."""
    target_path = Path(target_path)
    target_path.parent.mkdir(parents=True, exist_ok=True)
    tmp = target_path.with_name(target_path.name + ".tmp")
    tmp.write_bytes(payload)
    tmp.replace(target_path)


def write_json_manifest(target_path: Path, payload: dict[str, Any]) -> None:
    text = json.dumps(payload, ensure_ascii=False, indent=2, default=json_default) + "\n"
    write_bytes_atomic(Path(target_path), text.encode("utf-8"))
