"""Alternating two-way tree automaton simulating a pushdown game on the stack tree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from pdgames_arena import GameSpec
from pdgames_core import get_logger
from pdgames_machine import BOTTOM, EPSILON, Action, Condition, Player, is_normal_form

logger = get_logger("reduction")

STAY = "N"
DOWN = "down"
UP = "up"


@dataclass(frozen=True, order=True)
class Direction:
    kind: str
    symbol: str = ""

    def __str__(self) -> str:
        if self.kind == DOWN:
            return f"↓{self.symbol}"
        return "↑" if self.kind == UP else "N"


def down(symbol: str) -> Direction:
    return Direction(DOWN, symbol)


N = Direction(STAY)
RETURN = Direction(UP)


@dataclass(frozen=True, order=True)
class Atom:
    letter: str
    direction: Direction
    target: str

    def __str__(self) -> str:
        return f"({self.letter or 'ε'}, {self.direction}, {self.target})"


@dataclass(frozen=True)
class Formula:
    """Pure disjunction or conjunction of atoms; empty ``or`` is false, empty ``and`` is true."""

    kind: str
    atoms: tuple[Atom, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("or", "and"):
            raise ValueError(f"formula kind must be 'or' or 'and', got {self.kind!r}")
        object.__setattr__(self, "atoms", tuple(sorted(set(self.atoms))))

    @property
    def is_false(self) -> bool:
        return self.kind == "or" and not self.atoms

    @property
    def is_true(self) -> bool:
        return self.kind == "and" and not self.atoms

    def satisfied_by(self, chosen: set[Atom] | frozenset[Atom]) -> bool:
        if self.kind == "and":
            return all(a in chosen for a in self.atoms)
        return any(a in chosen for a in self.atoms)

    def __str__(self) -> str:
        if not self.atoms:
            return "true" if self.kind == "and" else "false"
        joiner = " ∧ " if self.kind == "and" else " ∨ "
        return joiner.join(str(a) for a in self.atoms)


FALSE = Formula("or")


@dataclass(frozen=True)
class AlternatingTreeAutomaton:
    game: GameSpec
    states: frozenset[str]
    root: str
    verifiers: Mapping[str, str]
    transitions: Mapping[tuple[str, str], Formula]
    priorities: Mapping[str, int]

    @property
    def condition(self) -> Condition:
        return self.game.condition

    @property
    def initial_game_state(self) -> str:
        return self.game.machine.initial_state

    @property
    def labels(self) -> tuple[str, ...]:
        return self.game.machine.tops

    @property
    def verifier_states(self) -> frozenset[str]:
        return frozenset(self.verifiers.values())

    def formula(self, state: str, label: str) -> Formula:
        return self.transitions.get((state, label), FALSE)

    def col(self, state: str) -> int:
        return self.priorities[state]

    def is_game_state(self, state: str) -> bool:
        return state in self.game.machine.states


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def build_automaton(game: GameSpec) -> AlternatingTreeAutomaton:
    machine = game.machine
    if not is_normal_form(machine):
        raise ValueError(f"game {game.name} is not in normal form; normalize it first")
    taken = set(machine.states)
    root = _fresh("⟨root⟩", taken)
    symbols = sorted(machine.stack_alphabet)
    verifiers = {a: _fresh(f"⟨{a}⟩", taken) for a in symbols}

    transitions: dict[tuple[str, str], Formula] = {}
    for state in sorted(machine.states):
        kind = "or" if game.owner[state] is Player.P0 else "and"
        for label in machine.tops:
            atoms = []
            for rule in machine.rules_at(state, label):
                action = rule.action
                if action is Action.PUSH:
                    direction = down(rule.word[0])
                elif action is Action.POP:
                    direction = RETURN
                else:
                    direction = N
                atoms.append(Atom(rule.letter, direction, rule.target))
            transitions[(state, label)] = Formula(kind, tuple(atoms))

    transitions[(root, BOTTOM)] = Formula(
        "and",
        (Atom(EPSILON, N, machine.initial_state),) + tuple(Atom(EPSILON, down(a), verifiers[a]) for a in symbols),
    )
    for label, verifier in verifiers.items():
        transitions[(verifier, label)] = Formula(
            "and", tuple(Atom(EPSILON, down(a), verifiers[a]) for a in symbols)
        )

    priorities = {q: game.col[q] for q in machine.states} | {root: 0} | {v: 0 for v in verifiers.values()}
    automaton = AlternatingTreeAutomaton(
        game=game,
        states=frozenset(priorities),
        root=root,
        verifiers=verifiers,
        transitions=transitions,
        priorities=priorities,
    )
    logger.info(
        "automaton with %d states over %d labels",
        len(automaton.states),
        len(machine.tops),
        extra={"event": "automaton_built"},
    )
    return automaton
