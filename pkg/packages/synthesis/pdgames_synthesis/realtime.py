"""Strategies that play the original game when it was normalized first.

Every original rule expanded into a push chain is answered by a single
strategy transition: the chain's ε-steps are chased through the class
automaton and their pushes applied at once. Stack symbols are pairs
(class, parent class) so that the class exposed by a pop is always known.
"""

from __future__ import annotations


from pdgames_arena import GameNormalization, StrategyPDA
from pdgames_core import get_logger
from pdgames_machine import BOTTOM, FormatDescriptor, Player
from pdgames_reduction import Move, RegularCandidate

from .general import turn_rule

logger = get_logger("synthesis")


def pair_of(p: int, parent: int) -> str:
    return f"p{p}/p{parent}"


def _chase(candidate: RegularCandidate, intermediates: frozenset[str], p: int, move: Move) -> tuple[str, list[str]]:
    """Final target and pushed pairs (bottom first) after following ``move`` and the chain it enters."""
    classes = candidate.classes
    pushed: list[str] = []
    current = p
    while True:
        if move.is_down:
            child = classes.successor(current, move.direction.symbol)
            if child is None:
                raise ValueError(f"unresolvable chain: class {current} has no {move.direction.symbol} edge")
            pushed.append(pair_of(child, current))
            current = child
        elif move.is_up:
            # dip-free normal form: a pop never continues into a chain
            raise ValueError(f"unresolvable chain: {move} pops inside an expansion chain")
        if move.target not in intermediates:
            return move.target, pushed
        follow = candidate.moves_from(current, move.target)
        if len(follow) != 1:
            raise ValueError(f"unresolvable chain: {len(follow)} moves for {move.target} at class {current}")
        move = follow[0]


def extract_realtime(
    candidate: RegularCandidate,
    oriented: GameNormalization,
    *,
    player: Player = Player.P0,
    name: str | None = None,
    realtime: bool = True,
) -> StrategyPDA:
    game = oriented.game
    intermediates = oriented.normalization.intermediates
    classes = candidate.classes
    preds = classes.predecessors

    def tops(p: int) -> list[str]:
        return [BOTTOM] if p == 0 else [pair_of(p, parent) for parent in preds[p]]

    rules = []
    for p in classes.classes:
        for move in sorted(candidate.moves[p]):
            if move.source not in game.machine.states or move.source in intermediates:
                continue
            for top in tops(p):
                if move.is_up:
                    if p == 0:
                        raise ValueError("candidate is not a witness: pop at the root class")
                    if move.target in intermediates:
                        raise ValueError(f"unresolvable chain: {move} pops into an expansion chain")
                    rules.append(turn_rule(game, move, top, move.target, ()))
                    continue
                # stays and pushes; the pushes of the chain are merged into one word
                target, pushed = _chase(candidate, intermediates, p, move)
                rules.append(turn_rule(game, move, top, target, tuple(reversed(pushed)) + (top,)))

    stack = {t for p in classes.classes if p != 0 for t in tops(p)}
    states = game.machine.states - intermediates
    strategy = StrategyPDA(
        name=name or f"{oriented.source.name}-realtime",
        player=player,
        states=states,
        input_alphabet=game.machine.input_alphabet,
        output_alphabet=game.machine.input_alphabet,
        stack_alphabet=frozenset(stack),
        initial_state=game.machine.initial_state,
        rules=tuple(rules),
        fmt=FormatDescriptor(deterministic=True, realtime=realtime),
    )
    logger.info("merged strategy with %d rules", len(strategy.rules), extra={"event": "strategy_extracted"})
    return strategy
