from __future__ import annotations

from logging import getLogger

LOGGER = getLogger("gruenbaum")


__all__ = ["LOGGER"]
