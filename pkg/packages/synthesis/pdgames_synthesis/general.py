"""Strategies read off the top of the stack: one stack symbol per class."""

from __future__ import annotations


from pdgames_arena import GameSpec, StrategyPDA, StrategyRule
from pdgames_core import get_logger
from pdgames_machine import BOTTOM, EPSILON, FormatDescriptor, Player
from pdgames_reduction import Move, RegularCandidate

logger = get_logger("synthesis")


def class_symbol(p: int) -> str:
    return BOTTOM if p == 0 else f"p{p}"


def turn_rule(game: GameSpec, move: Move, top: str, target: str, word: tuple[str, ...]) -> StrategyRule:
    """Own positions consume nothing and emit the move; opponent positions consume it."""
    if game.owner[move.source] is Player.P0:
        return StrategyRule(move.source, EPSILON, top, target, word, move.letter)
    return StrategyRule(move.source, move.letter, top, target, word, EPSILON)


def extract_general(
    candidate: RegularCandidate,
    game: GameSpec,
    *,
    player: Player = Player.P0,
    name: str | None = None,
) -> StrategyPDA:
    """``game`` is the normalized game the candidate was found for, Player 0 being the protagonist."""
    classes = candidate.classes
    rules: list[StrategyRule] = []
    for p in classes.classes:
        top = class_symbol(p)
        for move in sorted(candidate.moves[p]):
            if move.source not in game.machine.states:
                continue
            if move.is_stay:
                rules.append(turn_rule(game, move, top, move.target, (top,)))
            elif move.is_down:
                child = classes.successor(p, move.direction.symbol)
                if child is None:
                    raise ValueError(f"candidate is not a witness: class {p} has no {move.direction.symbol} edge")
                rules.append(turn_rule(game, move, top, move.target, (class_symbol(child), top)))
            else:
                if p == 0:
                    raise ValueError("candidate is not a witness: pop at the root class")
                rules.append(turn_rule(game, move, top, move.target, ()))

    letters = game.machine.input_alphabet
    strategy = StrategyPDA(
        name=name or f"{game.name}-general",
        player=player,
        states=game.machine.states,
        input_alphabet=letters,
        output_alphabet=letters,
        stack_alphabet=frozenset(class_symbol(p) for p in classes.classes if p != 0),
        initial_state=game.machine.initial_state,
        rules=tuple(rules),
        fmt=FormatDescriptor(deterministic=True),
    )
    logger.info(
        "general strategy with %d rules", len(strategy.rules), extra={"event": "strategy_extracted"}
    )
    return strategy
