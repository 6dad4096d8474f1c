"""Shared fixtures for e2e tests.

Runs the command-line entry point in a fresh interpreter, the way a user would.
Run with: uv run pytest tests/e2e/ -v
"""
import json
import subprocess
import sys
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[2]
TIMEOUT = 600


@dataclass
class Completed:
    status: int
    stdout: str
    stderr: str

    def json(self) -> Any:
        return json.loads(self.stdout)


@pytest.fixture
def cli(tmp_path: Path) -> Callable[..., Completed]:
    """Invoke ``python -m cli`` from a scratch working directory."""

    def invoke(*argv: str) -> Completed:
        proc = subprocess.run(
            [sys.executable, "-m", "cli", *argv],
            cwd=tmp_path,
            env={"PYTHONPATH": str(PROJECT_ROOT), "PATH": ""},
            capture_output=True,
            text=True,
            timeout=TIMEOUT,
        )
        return Completed(proc.returncode, proc.stdout, proc.stderr)

    return invoke
