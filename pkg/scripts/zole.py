#!/usr/bin/env python3
"""Run the zole command line from a source checkout without installing it.

Usage:
    python scripts/zole.py experiment --out runs/experiment
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from zole.cli.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
