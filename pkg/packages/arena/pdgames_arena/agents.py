"""Agents resolving positions during simulation."""

from __future__ import annotations

import sys
from typing import Callable, Mapping, Sequence, TextIO

import numpy as np

from pdgames_machine import Configuration, Player

from .models import GameSpec

Move = tuple[str, Configuration]


class StrategyStuckError(RuntimeError):
    """A strategy has no rule for the situation it is asked about."""


class InteractiveAbort(RuntimeError):
    """The human player quit the session."""


class Agent:
    player: Player | None = None

    def choose(self, game: GameSpec, config: Configuration, moves: Sequence[Move]) -> int:
        raise NotImplementedError

    def observe(self, letter: str) -> None:
        """Called with every move the opponent makes."""

    def snapshot(self) -> tuple[str, tuple[str, ...]] | None:
        """Internal pushdown configuration, when the agent has one."""
        return None


def _index_of(moves: Sequence[Move], letter: str) -> int | None:
    for i, (a, _) in enumerate(moves):
        if a == letter:
            return i
    return None


class ScriptedAgent(Agent):
    """Plays the given letters in order; afterwards repeats the last one while legal."""

    def __init__(self, letters: Sequence[str]) -> None:
        self.letters = list(letters)
        self._next = 0
        self._last: str | None = None

    def choose(self, game: GameSpec, config: Configuration, moves: Sequence[Move]) -> int:
        if self._next < len(self.letters):
            letter = self.letters[self._next]
            self._next += 1
        else:
            letter = self._last if self._last is not None else moves[0][0]
        index = _index_of(moves, letter)
        if index is None:
            index = 0
        self._last = moves[index][0]
        return index


class RandomAgent(Agent):
    def __init__(self, seed: int = 0) -> None:
        self.seed = seed
        self._rng = np.random.default_rng(seed)

    def choose(self, game: GameSpec, config: Configuration, moves: Sequence[Move]) -> int:
        return int(self._rng.integers(len(moves)))


class PositionalAgent(Agent):
    """Picks ``choices[state]`` when legal, otherwise the first legal move."""

    def __init__(self, choices: Mapping[str, str]) -> None:
        self.choices = dict(choices)

    def choose(self, game: GameSpec, config: Configuration, moves: Sequence[Move]) -> int:
        letter = self.choices.get(config.state)
        index = _index_of(moves, letter) if letter is not None else None
        return 0 if index is None else index


class InteractiveAgent(Agent):
    """Line protocol: prints the configuration and numbered moves, reads an index; ``q`` quits."""

    def __init__(
        self,
        read_line: Callable[[], str] | None = None,
        out: TextIO | None = None,
    ) -> None:
        self._read_line = read_line or sys.stdin.readline
        self._out = out or sys.stdout

    def _say(self, text: str) -> None:
        self._out.write(text + "\n")
        self._out.flush()

    def choose(self, game: GameSpec, config: Configuration, moves: Sequence[Move]) -> int:
        self._say(f"configuration {config}")
        for i, (letter, target) in enumerate(moves):
            self._say(f"  [{i}] {letter or '~'} -> {target}")
        while True:
            self._out.write("move> ")
            self._out.flush()
            raw = self._read_line()
            if not raw:
                raise InteractiveAbort("input closed")
            answer = raw.strip()
            if answer.lower() in ("q", "quit"):
                raise InteractiveAbort("player quit")
            if answer.isdigit() and int(answer) < len(moves):
                return int(answer)
            self._say(f"enter a number between 0 and {len(moves) - 1}, or q")

    def observe(self, letter: str) -> None:
        self._say(f"opponent plays {letter or '~'}")
