from __future__ import annotations

import logging
import os
from pathlib import Path

import yaml
from dotenv import load_dotenv

from .solver.config import SolverConfig, parse_alpha

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).parent.parent


def load_config() -> dict:
    """Load configuration from .env and config.yaml. Env vars take precedence."""
    load_dotenv(PROJECT_ROOT / ".env")

    config_path = PROJECT_ROOT / "config.yaml"
    if config_path.exists():
        with open(config_path) as f:
            config = yaml.safe_load(f) or {}
    else:
        config = {}

    # Resolve log file path
    log_rel = config.get("logging", {}).get("file")
    if log_rel:
        config["log_file"] = str(PROJECT_ROOT / log_rel)
    else:
        config["log_file"] = None

    config["log_level"] = config.get("logging", {}).get("level", "INFO")
    config["log_levels"] = config.get("logging", {}).get("levels") or {}

    return config


def _optional_int(value, name: str):
    if value is None:
        return None
    try:
        return int(value)
    except (TypeError, ValueError) as e:
        raise ValueError(f"{name} must be an integer, got {value!r}") from e


def get_solver_config(config: dict) -> SolverConfig:
    """Extract solver settings with defaults. GPRES_BUDGET overrides node_budget."""
    solver = config.get("solver", {}) or {}
    budget = solver.get("node_budget", 20000)
    env_budget = os.environ.get("GPRES_BUDGET")
    if env_budget:
        logger.debug(f"node_budget overridden by GPRES_BUDGET={env_budget}")
        budget = env_budget
    return SolverConfig(
        alpha=parse_alpha(str(solver.get("alpha", "3/10"))),
        node_budget=_optional_int(budget, "node_budget"),
        max_intermediate_length=_optional_int(
            solver.get("max_intermediate_length"), "max_intermediate_length"
        ),
        max_search_length=_optional_int(solver.get("max_search_length"), "max_search_length"),
        conjugator_radius_override=_optional_int(
            solver.get("conjugator_radius_override"), "conjugator_radius_override"
        ),
        oracle_mode=bool(solver.get("oracle_mode", False)),
    )


def get_build_config(config: dict) -> dict:
    """Extract build settings with defaults."""
    build = config.get("build", {}) or {}
    return {
        "exhaustive_rank_cap": _optional_int(build.get("exhaustive_rank_cap", 4), "exhaustive_rank_cap"),
    }


def get_census_config(config: dict) -> dict:
    """Extract census settings with defaults."""
    census = config.get("census", {}) or {}
    return {
        "dedupe": bool(census.get("dedupe", False)),
    }
