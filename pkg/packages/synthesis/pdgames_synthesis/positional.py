"""Hand-written strategies that mirror the game stack and play fixed letters per state."""

from __future__ import annotations

from typing import Mapping

from pdgames_arena import GameSpec, StrategyPDA, StrategyRule
from pdgames_machine import EPSILON, FormatDescriptor, Player


def positional_strategy(
    game: GameSpec,
    choices: Mapping[str, str],
    *,
    player: Player = Player.P0,
    name: str = "positional",
) -> StrategyPDA:
    """Strategy copying every game rule; at own states it plays ``choices[state]`` when enabled,
    otherwise the first enabled letter."""
    rules: list[StrategyRule] = []
    machine = game.machine
    for state in sorted(machine.states):
        own = game.owner[state] is player
        for top in machine.tops:
            enabled = sorted(machine.rules_at(state, top))
            if not enabled:
                continue
            if own:
                preferred = [r for r in enabled if r.letter == choices.get(state)]
                rule = (preferred or enabled)[0]
                rules.append(StrategyRule(state, EPSILON, top, rule.target, rule.word, rule.letter))
            else:
                rules.extend(StrategyRule(r.state, r.letter, r.top, r.target, r.word, EPSILON) for r in enabled)
    return StrategyPDA(
        name=name,
        player=player,
        states=machine.states,
        input_alphabet=machine.input_alphabet,
        output_alphabet=machine.input_alphabet,
        stack_alphabet=machine.stack_alphabet,
        initial_state=machine.initial_state,
        rules=tuple(rules),
        fmt=FormatDescriptor(deterministic=True),
    )
