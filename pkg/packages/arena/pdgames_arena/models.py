"""Game and play records."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from pdgames_machine import (
    Condition,
    Configuration,
    FormatDescriptor,
    LassoRun,
    Player,
    PriorityFunction,
    PushdownMachine,
)


@dataclass(frozen=True)
class GameSpec:
    machine: PushdownMachine
    owner: Mapping[str, Player]
    col: PriorityFunction
    condition: Condition = Condition.PARITY
    name: str = "game"
    fmt: FormatDescriptor = FormatDescriptor(deterministic=True)

    def __post_init__(self) -> None:
        owner = {q: Player(p) for q, p in sorted(dict(self.owner).items())}
        object.__setattr__(self, "owner", owner)
        object.__setattr__(self, "condition", Condition(self.condition))
        unowned = sorted(self.machine.states - owner.keys())
        if unowned:
            raise ValueError(f"owner undefined for: {', '.join(unowned)}")
        stray = sorted(owner.keys() - self.machine.states)
        if stray:
            raise ValueError(f"owner given for undeclared states: {', '.join(stray)}")
        missing = self.col.missing(self.machine.states)
        if missing:
            raise ValueError(f"priority undefined for: {', '.join(missing)}")

    @property
    def initial(self) -> Configuration:
        return self.machine.initial

    def states_of(self, player: Player) -> frozenset[str]:
        return frozenset(q for q, p in self.owner.items() if p is player)


class PlayStatus(str, Enum):
    ONGOING = "ongoing"
    LASSO = "lasso"
    DEAD = "dead"


@dataclass(frozen=True)
class PlayRecord:
    configurations: tuple[Configuration, ...]
    letters: tuple[str, ...]
    status: PlayStatus = PlayStatus.ONGOING
    lasso: LassoRun | None = None
    winner: Player | None = None
    stuck: Player | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def final(self) -> Configuration:
        return self.configurations[-1]

    def to_dict(self) -> dict:
        out: dict = {
            "status": self.status.value,
            "winner": self.winner.value if self.winner else None,
            "configurations": [str(c) for c in self.configurations],
            "letters": [letter or "~" for letter in self.letters],
        }
        if self.lasso is not None:
            out["cycle_start"] = len(self.lasso.prefix)
            out["cycle_length"] = len(self.lasso.cycle)
            out["growth"] = self.lasso.growth
        if self.stuck is not None:
            out["stuck"] = self.stuck.value
        return out
