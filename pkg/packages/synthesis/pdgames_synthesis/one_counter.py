"""One-counter strategies from lasso-shaped candidates.

With a single stack symbol the class automaton is a lasso ``p1 ... pl ... pn``
with ``pn`` looping back to ``pl``. The strategy keeps its position on the
lasso in the finite control and counts completed loops on its own stack.
"""

from __future__ import annotations

from dataclasses import replace

from pdgames_arena import GameNormalization, StrategyPDA, StrategyRule
from pdgames_core import get_logger
from pdgames_machine import BOTTOM, FormatDescriptor, Player
from pdgames_reduction import Move, RegularCandidate

from .general import turn_rule

logger = get_logger("synthesis")


def lasso_state(state: str, position: int) -> str:
    return f"{state}|p{position}"


class _Lasso:
    def __init__(self, candidate: RegularCandidate) -> None:
        classes = candidate.classes
        if classes.lasso_shape() is None:
            raise ValueError("one-counter extraction needs a lasso-shaped candidate")
        self.order = classes.chain()
        self.n = len(self.order)
        self.l = self.order.index(classes.loop_entry()) + 1
        if self.l < 2:
            raise ValueError("lasso loops back to the root class")

    def position(self, p: int) -> int:
        return self.order.index(p) + 1

    def cls(self, i: int) -> int:
        return self.order[i - 1]

    def down(self, i: int) -> tuple[int, int]:
        """Next position and the number of counter increments."""
        return (i + 1, 0) if i < self.n else (self.l, 1)


def extract_one_counter(
    candidate: RegularCandidate,
    oriented: GameNormalization,
    *,
    player: Player = Player.P0,
    name: str | None = None,
) -> StrategyPDA:
    game = oriented.game
    symbols = sorted(game.machine.stack_alphabet)
    if len(symbols) != 1:
        raise ValueError(f"one-counter extraction needs a single stack symbol, got {len(symbols)}")
    (counter,) = symbols
    intermediates = oriented.normalization.intermediates
    lasso = _Lasso(candidate)

    def chase(i: int, move: Move) -> tuple[str, int, int]:
        increments = 0
        while True:
            if move.is_down:
                i, inc = lasso.down(i)
                increments += inc
            elif move.is_up:
                raise ValueError(f"unresolvable chain: {move} pops inside an expansion chain")
            if move.target not in intermediates:
                return move.target, i, increments
            follow = candidate.moves_from(lasso.cls(i), move.target)
            if len(follow) != 1:
                raise ValueError(f"unresolvable chain at {move.target}")
            move = follow[0]

    def at(source: str, move: Move, top: str, target: str, word: tuple[str, ...]) -> StrategyRule:
        return replace(turn_rule(game, move, top, target, word), state=source)

    rules: list[StrategyRule] = []
    for i in range(1, lasso.n + 1):
        for move in sorted(candidate.moves[lasso.cls(i)]):
            if move.source not in game.machine.states or move.source in intermediates:
                continue
            source = lasso_state(move.source, i)
            if move.is_up:
                if i == 1:
                    raise ValueError("candidate is not a witness: pop at the root class")
                if move.target in intermediates:
                    raise ValueError(f"unresolvable chain: {move} pops into an expansion chain")
                if i == lasso.l:
                    # two predecessors: the counter tells which one
                    rules.append(
                        at(source, move, BOTTOM, lasso_state(move.target, i - 1), (BOTTOM,))
                    )
                    rules.append(at(source, move, counter, lasso_state(move.target, lasso.n), ()))
                else:
                    for top in (counter, BOTTOM):
                        rules.append(at(source, move, top, lasso_state(move.target, i - 1), (top,)))
                continue
            target, j, increments = chase(i, move)
            for top in (counter, BOTTOM):
                word = (counter,) * increments + (top,)
                rules.append(at(source, move, top, lasso_state(target, j), word))

    initial = lasso_state(game.machine.initial_state, 1)
    states = {r.state for r in rules} | {r.target for r in rules} | {initial}
    strategy = StrategyPDA(
        name=name or f"{oriented.source.name}-oneCounter",
        player=player,
        states=frozenset(states),
        input_alphabet=game.machine.input_alphabet,
        output_alphabet=game.machine.input_alphabet,
        stack_alphabet=frozenset({counter}),
        initial_state=initial,
        rules=tuple(rules),
        fmt=FormatDescriptor(deterministic=True, one_counter=True),
    )
    logger.info(
        "one-counter strategy with %d rules, loop %d..%d",
        len(strategy.rules),
        lasso.l,
        lasso.n,
        extra={"event": "strategy_extracted"},
    )
    return strategy
