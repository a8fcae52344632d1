import json
from datetime import datetime, timezone

import numpy as np

from zole.core.files import write_bytes_atomic, write_json_manifest


def test_atomic_write_creates_parents_and_leaves_no_temp_file(tmp_path):
    target = tmp_path / "a" / "b" / "out.bin"
    write_bytes_atomic(target, b"one")
    write_bytes_atomic(target, b"two")
    assert target.read_bytes() == b"two"
    assert [p.name for p in target.parent.iterdir()] == ["out.bin"]


def test_manifest_serializes_arrays_and_timestamps(tmp_path):
    stamp = datetime(2026, 1, 2, 3, 4, 5, tzinfo=timezone.utc)
    write_json_manifest(tmp_path / "m.json", {"when": stamp, "values": np.arange(3), "名稱": "中文"})
    text = (tmp_path / "m.json").read_text(encoding="utf-8")
    assert "中文" in text
    assert json.loads(text) == {"when": stamp.isoformat(), "values": [0, 1, 2], "名稱": "中文"}
