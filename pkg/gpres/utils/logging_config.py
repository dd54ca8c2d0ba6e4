from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Mapping, Optional

SUBSYSTEMS = ("words", "solver", "grading", "construct", "equations")


def _level(name: str) -> int:
    level = logging.getLevelName(name.upper())
    if not isinstance(level, int):
        raise ValueError(f"Unknown log level: {name!r}")
    return level


def setup_logging(
    log_file: Optional[str] = None,
    level: str = "INFO",
    subsystem_levels: Optional[Mapping[str, str]] = None,
) -> logging.Logger:
    """Configure logging to stderr and an optional file. Stdout is left to the CLI.

    subsystem_levels maps a gpres subpackage (solver, construct, ...) to its own
    level, so a long build can log every rank while the solver stays quiet.
    Levels are re-applied on every call; handlers are only added once.
    """
    root_logger = logging.getLogger("gpres")
    root_logger.setLevel(_level(level))

    for name in SUBSYSTEMS:
        logging.getLogger(f"gpres.{name}").setLevel(logging.NOTSET)
    for name, sub_level in (subsystem_levels or {}).items():
        if name not in SUBSYSTEMS:
            expected = ", ".join(SUBSYSTEMS)
            raise ValueError(f"Unknown logging subsystem {name!r}; expected one of {expected}")
        logging.getLogger(f"gpres.{name}").setLevel(_level(sub_level))

    # Avoid duplicate handlers on repeated calls
    if root_logger.handlers:
        return root_logger

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    root_logger.addHandler(console)

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(
            logging.Formatter("%(asctime)s [%(levelname)s] %(name)s: %(message)s")
        )
        root_logger.addHandler(file_handler)

    return root_logger
