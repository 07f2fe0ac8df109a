"""Regular strategy candidates: class automata with per-class strategy labels and annotations."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Union

from pdgames_machine import BOTTOM, Condition

from .automaton import DOWN, STAY, UP, Atom, Direction


@dataclass(frozen=True, order=True)
class Move:
    """Strategy entry ``(source, letter, direction, target)`` chosen at a class."""

    source: str
    letter: str
    direction: Direction
    target: str

    @classmethod
    def of(cls, source: str, atom: Atom) -> "Move":
        return cls(source, atom.letter, atom.direction, atom.target)

    @property
    def atom(self) -> Atom:
        return Atom(self.letter, self.direction, self.target)

    @property
    def is_stay(self) -> bool:
        return self.direction.kind == STAY

    @property
    def is_down(self) -> bool:
        return self.direction.kind == DOWN

    @property
    def is_up(self) -> bool:
        return self.direction.kind == UP

    def __str__(self) -> str:
        return f"({self.source}, {self.letter or 'ε'}, {self.direction}, {self.target})"


ParityAnnotation = frozenset  # of (q, m, q')


@dataclass(frozen=True)
class StairAnnotation:
    """``reach``: detours ending at the node; ``once``: those returning to it only at their end;
    ``minima``: reach entries with the least priority seen at their Steps positions."""

    reach: frozenset[tuple[str, str]] = frozenset()
    once: frozenset[tuple[str, str]] = frozenset()
    minima: frozenset[tuple[str, int, str]] = frozenset()


AnnotationLabel = Union[frozenset, StairAnnotation]


def detour_entries(label: AnnotationLabel) -> frozenset[tuple[str, int, str]]:
    """The ``(q, m, q')`` entries a trace may follow at a node."""
    if isinstance(label, StairAnnotation):
        return label.minima
    return label


@dataclass(frozen=True)
class ClassAutomaton:
    """Finite automaton over the stack alphabet generating the stack tree; class 0 is the root."""

    labels: tuple[str, ...]
    delta: Mapping[tuple[int, str], int]
    idle: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "delta", dict(self.delta))
        object.__setattr__(self, "idle", frozenset(self.idle))
        if not self.labels or self.labels[0] != BOTTOM:
            raise ValueError("class 0 must be the root, labelled with the bottom symbol")
        for (p, symbol), q in self.delta.items():
            if self.labels[q] != symbol:
                raise ValueError(f"class {q} labelled {self.labels[q]} entered by {symbol}")
            if q == 0:
                raise ValueError("the root class has no incoming edges")

    @property
    def root(self) -> int:
        return 0

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def classes(self) -> range:
        return range(len(self.labels))

    @property
    def active_count(self) -> int:
        return len(self.labels) - len(self.idle)

    def successor(self, p: int, symbol: str) -> int | None:
        return self.delta.get((p, symbol))

    @cached_property
    def predecessors(self) -> dict[int, tuple[int, ...]]:
        preds: dict[int, set[int]] = defaultdict(set)
        for (p, _), q in self.delta.items():
            preds[q].add(p)
        return {q: tuple(sorted(preds.get(q, ()))) for q in self.classes}

    def class_of(self, word: tuple[str, ...]) -> int | None:
        """Class of the node reached by reading ``word`` from the root (first symbol first)."""
        p: int | None = 0
        for symbol in word:
            if p is None:
                return None
            p = self.delta.get((p, symbol))
        return p

    def chain(self) -> list[int]:
        """Classes visited from the root along the single stack symbol, until a repeat."""
        symbols = sorted({s for (_, s) in self.delta})
        if len(symbols) > 1:
            raise ValueError("lasso shape is defined for a single stack symbol")
        order = [0]
        if not symbols:
            return order
        (symbol,) = symbols
        p = self.delta.get((0, symbol))
        while p is not None and p not in order:
            order.append(p)
            p = self.delta.get((p, symbol))
        return order

    def loop_entry(self) -> int | None:
        order = self.chain()
        if len(order) < 2:
            return None
        symbol = next(s for (_, s) in self.delta)
        return self.delta.get((order[-1], symbol))

    def lasso_shape(self) -> tuple[int, int] | None:
        """``(prefix, period)`` of the root-first class word, counting the root; None if open."""
        entry = self.loop_entry()
        if entry is None:
            return None
        order = self.chain()
        j = order.index(entry)
        return j, len(order) - j


@dataclass(frozen=True)
class RegularCandidate:
    classes: ClassAutomaton
    moves: Mapping[int, frozenset[Move]]
    annotation: Mapping[int, AnnotationLabel]
    condition: Condition = Condition.PARITY
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "moves", {p: frozenset(self.moves.get(p, ())) for p in self.classes.classes})
        object.__setattr__(self, "condition", Condition(self.condition))

    def per_class(self, p: int) -> tuple[str, frozenset[Move], AnnotationLabel]:
        return self.classes.labels[p], self.moves[p], self.annotation[p]

    def moves_from(self, p: int, state: str) -> list[Move]:
        return sorted(m for m in self.moves[p] if m.source == state)

    def lasso_shape(self) -> tuple[int, int] | None:
        return self.classes.lasso_shape()

    def summary(self, game_states: frozenset[str] | None = None) -> dict:
        classes = []
        for p in self.classes.classes:
            moves = sorted(self.moves[p])
            if game_states is not None:
                moves = [m for m in moves if m.source in game_states]
            classes.append(
                {
                    "class": p,
                    "label": self.classes.labels[p],
                    "idle": p in self.classes.idle,
                    "edges": {s: q for (src, s), q in sorted(self.classes.delta.items()) if src == p},
                    "moves": [str(m) for m in moves],
                }
            )
        out: dict = {"classes": classes, "active_classes": self.classes.active_count}
        shape = self.lasso_shape() if len({s for (_, s) in self.classes.delta}) <= 1 else None
        if shape is not None:
            out["lasso"] = {"prefix": shape[0], "period": shape[1]}
        return out
