"""Pushdown strategies: deterministic pushdown transducers and their runtime."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from pdgames_machine import (
    BOTTOM,
    EPSILON,
    Configuration,
    FormatDescriptor,
    Player,
    PushdownMachine,
    Rule,
)
from pdgames_machine.models import determinism_violations

from .agents import Agent, StrategyStuckError
from .models import GameSpec


@dataclass(frozen=True, order=True)
class StrategyRule:
    state: str
    letter: str
    top: str
    target: str
    word: tuple[str, ...]
    output: str = EPSILON

    def as_rule(self) -> Rule:
        return Rule(self.state, self.letter, self.top, self.target, self.word)

    @property
    def played(self) -> str:
        """The game letter this rule corresponds to: the output on own turns, the input otherwise."""
        return self.output or self.letter


@dataclass(frozen=True)
class StrategyPDA:
    name: str
    player: Player
    states: frozenset[str]
    input_alphabet: frozenset[str]
    output_alphabet: frozenset[str]
    stack_alphabet: frozenset[str]
    initial_state: str
    rules: tuple[StrategyRule, ...]
    fmt: FormatDescriptor = field(default_factory=lambda: FormatDescriptor(deterministic=True))

    def __post_init__(self) -> None:
        for name in ("states", "input_alphabet", "output_alphabet", "stack_alphabet"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        object.__setattr__(self, "player", Player(self.player))
        object.__setattr__(self, "rules", tuple(sorted(set(self.rules))))
        problems = self.problems()
        if problems:
            raise ValueError("; ".join(problems))

    def problems(self) -> list[str]:
        # Reuse the machine checks on the transducer's input side.
        try:
            PushdownMachine(
                states=self.states,
                input_alphabet=self.input_alphabet,
                stack_alphabet=self.stack_alphabet,
                initial_state=self.initial_state,
                rules=tuple(r.as_rule() for r in self.rules),
            )
        except ValueError as exc:
            return [str(exc)]
        out = [
            f"{r.as_rule()}: output {r.output} undeclared"
            for r in self.rules
            if r.output and r.output not in self.output_alphabet
        ]
        out += [f"{r.as_rule()}: consumes and emits at once" for r in self.rules if r.letter and r.output]
        out += determinism_violations(r.as_rule() for r in self.rules)
        return out

    @cached_property
    def _index(self) -> dict[tuple[str, str], dict[str, StrategyRule]]:
        index: dict[tuple[str, str], dict[str, StrategyRule]] = defaultdict(dict)
        for rule in self.rules:
            index[(rule.state, rule.top)][rule.letter] = rule
        return dict(index)

    def rules_at(self, state: str, top: str) -> dict[str, StrategyRule]:
        return self._index.get((state, top), {})


def game_facing_machine(strategy: StrategyPDA) -> PushdownMachine:
    """The strategy as a machine over game letters: each rule labelled by the letter it plays or reads."""
    return PushdownMachine(
        states=strategy.states,
        input_alphabet=strategy.input_alphabet | strategy.output_alphabet,
        stack_alphabet=strategy.stack_alphabet,
        initial_state=strategy.initial_state,
        rules=tuple(Rule(r.state, r.played, r.top, r.target, r.word) for r in strategy.rules),
    )


class StrategyRunner:
    def __init__(self, strategy: StrategyPDA) -> None:
        self.strategy = strategy
        self.state = strategy.initial_state
        self.stack: tuple[str, ...] = (BOTTOM,)

    def fork(self) -> "StrategyRunner":
        other = StrategyRunner.__new__(StrategyRunner)
        other.strategy = self.strategy
        other.state = self.state
        other.stack = self.stack
        return other

    @property
    def configuration(self) -> Configuration:
        return Configuration(self.state, self.stack)

    def _apply(self, rule: StrategyRule) -> None:
        self.state = rule.target
        self.stack = rule.word + self.stack[1:]

    def respond(self) -> str:
        """Take the strategy's own move and return the letter it plays (may be ε)."""
        rule = self.strategy.rules_at(self.state, self.stack[0]).get(EPSILON)
        if rule is None:
            raise StrategyStuckError(f"strategy {self.strategy.name} has no move in {self.configuration}")
        self._apply(rule)
        return rule.output

    def observe(self, letter: str) -> None:
        rule = self.strategy.rules_at(self.state, self.stack[0]).get(letter)
        if rule is None or rule.output:
            raise StrategyStuckError(
                f"strategy {self.strategy.name} cannot follow {letter or '~'} in {self.configuration}"
            )
        self._apply(rule)

    def snapshot(self) -> tuple[str, tuple[str, ...]]:
        return (self.state, self.stack)


class StrategyAgent(Agent):
    def __init__(self, strategy: StrategyPDA) -> None:
        self.strategy = strategy
        self.player = strategy.player
        self.runner = StrategyRunner(strategy)

    def choose(self, game: GameSpec, config: Configuration, moves: Sequence[tuple[str, Configuration]]) -> int:
        letter = self.runner.respond()
        for i, (a, _) in enumerate(moves):
            if a == letter:
                return i
        raise StrategyStuckError(f"strategy plays {letter or '~'}, which is illegal in {config}")

    def observe(self, letter: str) -> None:
        self.runner.observe(letter)

    def snapshot(self) -> tuple[str, tuple[str, ...]]:
        return self.runner.snapshot()
