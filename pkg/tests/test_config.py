"""Tests for configuration loading."""
from __future__ import annotations

from fractions import Fraction

import pytest

from gpres.config import get_build_config, get_census_config, get_solver_config, load_config


class TestLoadConfig:
    def test_returns_dict(self):
        config = load_config()
        assert isinstance(config, dict)

    def test_has_log_level(self):
        config = load_config()
        assert "log_level" in config
        assert "log_file" in config
        assert isinstance(config["log_levels"], dict)


class TestSolverConfig:
    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("GPRES_BUDGET", raising=False)
        cfg = get_solver_config({})
        assert cfg.alpha == Fraction(3, 10)
        assert cfg.node_budget == 20000
        assert cfg.max_intermediate_length is None
        assert cfg.conjugator_radius_override is None
        assert cfg.max_search_length is None
        assert cfg.oracle_mode is False

    def test_overrides(self, monkeypatch):
        monkeypatch.delenv("GPRES_BUDGET", raising=False)
        cfg = get_solver_config({
            "solver": {
                "alpha": "1/4",
                "node_budget": 300,
                "conjugator_radius_override": 5,
                "max_search_length": 4000,
                "oracle_mode": True,
            }
        })
        assert cfg.alpha == Fraction(1, 4)
        assert cfg.node_budget == 300
        assert cfg.conjugator_radius_override == 5
        assert cfg.max_search_length == 4000
        assert cfg.oracle_mode is True
        # Non-overridden defaults remain
        assert cfg.max_intermediate_length is None

    def test_env_budget_wins(self, monkeypatch):
        monkeypatch.setenv("GPRES_BUDGET", "42")
        cfg = get_solver_config({"solver": {"node_budget": 300}})
        assert cfg.node_budget == 42

    def test_bad_budget(self, monkeypatch):
        monkeypatch.setenv("GPRES_BUDGET", "lots")
        with pytest.raises(ValueError):
            get_solver_config({})

    def test_decimal_alpha_rejected(self, monkeypatch):
        monkeypatch.delenv("GPRES_BUDGET", raising=False)
        with pytest.raises(ValueError):
            get_solver_config({"solver": {"alpha": 0.3}})


class TestBuildConfig:
    def test_defaults(self):
        assert get_build_config({}) == {"exhaustive_rank_cap": 4}

    def test_overrides(self):
        assert get_build_config({"build": {"exhaustive_rank_cap": 6}})["exhaustive_rank_cap"] == 6


class TestCensusConfig:
    def test_defaults(self):
        assert get_census_config({})["dedupe"] is False

    def test_overrides(self):
        assert get_census_config({"census": {"dedupe": True}})["dedupe"] is True
