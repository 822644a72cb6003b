"""Utility functions for the mbs.obstruction package."""

from __future__ import annotations

import logging
from importlib import import_module, metadata
from typing import TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover
    from types import ModuleType

logger = logging.getLogger(__name__)


def get_supported_families() -> list[str]:
    """Returns a list of all supported surface families."""
    return ["rp2", "x1", "x2", "x3"]


def get_module_for_family(family: str) -> ModuleType:
    """Returns the generator module for a specific family."""
    logger.debug("Loading generator module for %s", family)
    return import_module("mbs.obstruction.families." + family)


def get_version_header() -> str:
    """Returns the version lines appended to help texts and text reports."""
    return (
        f"mbs.obstruction version: {metadata.version('mbs.obstruction')}\n"
        f"networkx version: {metadata.version('networkx')}\n"
        f"numpy version: {metadata.version('numpy')}\n"
    )
