"""Strategy synthesis: pushdown strategies read off solved candidates."""

from pdgames_arena import StrategyPDA, StrategyRule, game_facing_machine

from .extract import (
    STRATEGY_FORMATS,
    check_strategy_format,
    extract_for_format,
    extract_variants,
    format_descriptor,
    solve_for_format,
)
from .general import class_symbol, extract_general, turn_rule
from .one_counter import extract_one_counter
from .positional import positional_strategy
from .realtime import extract_realtime
from .visibly import extract_visibly

__all__ = [
    "STRATEGY_FORMATS",
    "StrategyPDA",
    "StrategyRule",
    "check_strategy_format",
    "class_symbol",
    "extract_for_format",
    "extract_general",
    "extract_one_counter",
    "extract_realtime",
    "extract_variants",
    "extract_visibly",
    "format_descriptor",
    "game_facing_machine",
    "positional_strategy",
    "solve_for_format",
    "turn_rule",
]
