"""Verification: fixture games, finite-arena oracle, strategy composition and validation."""

from .arena import SINK, FiniteArena, build_arena
from .fixtures import FIXTURE_TEXTS, FixtureSet, fixtures, write_fixtures
from .product import ProductGame, compose_product
from .random_games import GAME_KINDS, random_closed_game, random_dpda
from .validate import ValidationReport, validate_strategy
from .zielonka import attractor, finite_arena_oracle, solve_arena, zielonka

__all__ = [
    "FIXTURE_TEXTS",
    "GAME_KINDS",
    "SINK",
    "FiniteArena",
    "FixtureSet",
    "ProductGame",
    "ValidationReport",
    "attractor",
    "build_arena",
    "compose_product",
    "finite_arena_oracle",
    "fixtures",
    "random_closed_game",
    "random_dpda",
    "solve_arena",
    "validate_strategy",
    "write_fixtures",
    "zielonka",
]
