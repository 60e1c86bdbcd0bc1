"""Command-line defaults.

Defaults may be stored in a file called ".nilstalk" in your home directory.
The format is an INI style like this:

[nilstalk]
format = json
sweep = 2..13

The NILSTALK_FORMAT environment variable overrides the file.
"""

import configparser
import logging
import os
import re
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path

from .exceptions import DomainError
from .render import OutputFormat

_LOGGER = logging.getLogger("nilstalk")

SECTION = "nilstalk"
FORMAT_ENV = "NILSTALK_FORMAT"

_SWEEP_RE = re.compile(r"^(?:p=)?(\d+)\.\.(\d+)$")


@dataclass(frozen=True)
class Settings:
    """Defaults for the command-line interface."""

    format: OutputFormat = OutputFormat.TABLE
    """Output format."""

    sweep: tuple[int, int] | None = None
    """Inclusive prime bounds for sweeps."""


def default_path() -> Path:
    return Path.home() / ".nilstalk"


def parse_sweep(text: str) -> tuple[int, int]:
    """Parses ``p=2..13`` or ``2..13`` into inclusive bounds."""
    if (m := _SWEEP_RE.match(text.strip())) is None:
        raise DomainError(f"Invalid sweep: {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise DomainError(f"Empty sweep: {text!r}")
    return lo, hi


def load_settings(
    path: Path | None = None, environ: Mapping[str, str] = os.environ
) -> Settings:
    """Reads defaults from the INI file, then the environment.

    :param path: The INI file; ``~/.nilstalk`` by default. A missing file is fine.
    :param environ: The environment to read NILSTALK_FORMAT from.
    """
    cfg = configparser.ConfigParser()
    try:
        read = cfg.read(str(path or default_path()), encoding="utf-8")
    except configparser.Error as ex:
        raise DomainError(f"Invalid settings file: {ex}") from ex
    _LOGGER.debug("Read settings from %s", read)
    fmt = OutputFormat.TABLE
    sweep = None
    if cfg.has_section(SECTION):
        section = cfg[SECTION]
        if "format" in section:
            fmt = OutputFormat.parse(section["format"])
        if "sweep" in section:
            sweep = parse_sweep(section["sweep"])
    if value := environ.get(FORMAT_ENV):
        fmt = OutputFormat.parse(value)
    return Settings(format=fmt, sweep=sweep)
