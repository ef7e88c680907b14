"""Run only the acceptance suite and show its per-criterion summary."""
from __future__ import annotations

import sys
from pathlib import Path

import pytest

if __name__ == "__main__":
    here = Path(__file__).resolve().parents[1]
    sys.exit(pytest.main([str(here / "tests" / "test_acceptance.py"), "-q", *sys.argv[1:]]))
