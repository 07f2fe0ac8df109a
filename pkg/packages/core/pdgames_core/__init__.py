"""Shared services: configuration, logging, resource sampling, result documents."""

from .config import (
    AppConfig,
    CAPS_ENV,
    CONFIG_VERSION,
    DiagnosticsConfig,
    SearchConfig,
    SimulationConfig,
    ValidationConfig,
    config_path,
    load_config,
    parse_caps,
    save_config,
)
from .logging_setup import JsonFormatter, RunStamp, configure_logging, get_logger, log_dir
from .performance import ResourceBudget, ResourceSample, ResourceSampler
from .results import ResultDocument, load_result_document

__all__ = [
    "AppConfig",
    "CAPS_ENV",
    "CONFIG_VERSION",
    "DiagnosticsConfig",
    "JsonFormatter",
    "ResourceBudget",
    "ResourceSample",
    "ResourceSampler",
    "ResultDocument",
    "RunStamp",
    "SearchConfig",
    "SimulationConfig",
    "ValidationConfig",
    "config_path",
    "configure_logging",
    "get_logger",
    "load_config",
    "load_result_document",
    "log_dir",
    "parse_caps",
    "save_config",
]
