import importlib
import json

import pytest


@pytest.fixture(autouse=True)
def _quiet_logging(monkeypatch):
    # main() would attach a stderr handler to the root logger for the whole session
    cli_main = importlib.import_module("zole.cli.main")
    monkeypatch.setattr(cli_main, "configure_logging", lambda *args, **kwargs: None)


@pytest.fixture
def tiny_spec(tmp_path):
    path = tmp_path / "tiny-spec.json"
    path.write_text(
        json.dumps(
            {
                "scene": {"height": 16, "width": 16, "num_shapes": 1, "disp_range": [1, 3],
                          "max_disparity": 4, "texture_scale": 4.0},
            }
        ),
        encoding="utf-8",
    )
    return path
