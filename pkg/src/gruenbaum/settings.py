from __future__ import annotations

from attrs.validators import gt
from typed_settings import (
    EnvLoader,
    FileLoader,
    TomlFormat,
    load_settings,
    option,
    settings,
)

from gruenbaum.constants import DEFAULT_BUDGET, SETTINGS_TOML


@settings
class Settings:
    budget: int = option(
        default=DEFAULT_BUDGET,
        validator=gt(0),
        help="Explored-node cap for each exact search",
    )
    names: str | None = option(
        default=None, help="Comma-separated color names for d=3 display"
    )
    workers: int = option(
        default=1, validator=gt(0), help="Worker processes for 'scan'"
    )

    @property
    def names_use(self) -> tuple[str, ...] | None:
        if self.names is None:
            return None
        return tuple(n.strip() for n in self.names.split(","))


LOADERS = [
    FileLoader(formats={"*.toml": TomlFormat("gruenbaum")}, files=[SETTINGS_TOML]),
    EnvLoader("GRUENBAUM_"),
]
SETTINGS = load_settings(Settings, LOADERS)


__all__ = ["LOADERS", "SETTINGS", "Settings"]
