"""Shared pytest fixtures."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

if TYPE_CHECKING:
    from pathlib import Path


@pytest.fixture
def script_cwd(tmp_path_factory: pytest.TempPathFactory) -> Path:
    """Run console scripts from a directory outside the test's ``tmp_path``."""
    return tmp_path_factory.mktemp("script-cwd")
