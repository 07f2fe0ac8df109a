"""Pushdown games: game model, moves, agents, simulation, strategies and the text codec."""

from .agents import (
    Agent,
    InteractiveAbort,
    InteractiveAgent,
    PositionalAgent,
    RandomAgent,
    ScriptedAgent,
    StrategyStuckError,
)
from .gamefile import (
    GameFileError,
    format_game,
    format_strategy,
    load_game,
    load_strategy,
    parse_game,
    parse_strategy,
)
from .models import GameSpec, PlayRecord, PlayStatus
from .moves import GameNormalization, legal_moves, normalize_game, replay, swap_roles
from .simulate import find_lasso, lasso_key, simulate
from .strategy import StrategyAgent, StrategyPDA, StrategyRule, StrategyRunner, game_facing_machine

__all__ = [
    "Agent",
    "GameFileError",
    "GameNormalization",
    "GameSpec",
    "InteractiveAbort",
    "InteractiveAgent",
    "PlayRecord",
    "PlayStatus",
    "PositionalAgent",
    "RandomAgent",
    "ScriptedAgent",
    "StrategyAgent",
    "StrategyPDA",
    "StrategyRule",
    "StrategyRunner",
    "StrategyStuckError",
    "find_lasso",
    "lasso_key",
    "format_game",
    "format_strategy",
    "game_facing_machine",
    "legal_moves",
    "load_game",
    "load_strategy",
    "normalize_game",
    "parse_game",
    "parse_strategy",
    "replay",
    "simulate",
    "swap_roles",
]
