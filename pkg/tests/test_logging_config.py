"""Tests for logging setup."""
from __future__ import annotations

import logging

import pytest

from gpres.utils.logging_config import setup_logging


@pytest.fixture(autouse=True)
def restore_levels():
    yield
    setup_logging(level="INFO")


class TestSetupLogging:
    def test_root_level(self):
        logger = setup_logging(level="debug")
        assert logger.name == "gpres"
        assert logger.level == logging.DEBUG

    def test_subsystem_levels(self):
        setup_logging(level="INFO", subsystem_levels={"solver": "WARNING", "construct": "DEBUG"})
        assert logging.getLogger("gpres.solver.identity").getEffectiveLevel() == logging.WARNING
        assert logging.getLogger("gpres.construct.builder").getEffectiveLevel() == logging.DEBUG
        assert logging.getLogger("gpres.words.word").getEffectiveLevel() == logging.INFO

    def test_overrides_reset_on_next_call(self):
        setup_logging(subsystem_levels={"solver": "ERROR"})
        setup_logging()
        assert logging.getLogger("gpres.solver").getEffectiveLevel() == logging.INFO

    def test_handlers_added_once(self):
        first = len(setup_logging().handlers)
        assert len(setup_logging().handlers) == first

    def test_unknown_subsystem(self):
        with pytest.raises(ValueError):
            setup_logging(subsystem_levels={"database": "INFO"})

    def test_unknown_level(self):
        with pytest.raises(ValueError):
            setup_logging(level="chatty")
