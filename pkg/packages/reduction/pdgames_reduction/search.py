"""Lazy enumeration of regular strategy candidates.

Classes are created on demand along the moves a partial strategy can reach.
Player 0 positions branch over single atoms of their disjunction; other
positions take every atom. Verification branches are added when a candidate
is completed, since node labels are forced to the top of the stack.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from pdgames_core import get_logger
from pdgames_machine import BOTTOM, EPSILON

from .annotations import least_annotation
from .automaton import AlternatingTreeAutomaton, Atom, down
from .candidate import ClassAutomaton, Move, RegularCandidate
from .traces import check_traces

logger = get_logger("reduction")


@dataclass(frozen=True)
class SearchCaps:
    max_classes: int = 6
    max_prefix: int = 8
    max_period: int = 8
    max_nodes: int = 200_000

    def __post_init__(self) -> None:
        for name in ("max_classes", "max_prefix", "max_period", "max_nodes"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def to_dict(self) -> dict[str, int]:
        return {
            "max_classes": self.max_classes,
            "max_prefix": self.max_prefix,
            "max_period": self.max_period,
            "max_nodes": self.max_nodes,
        }


class _BudgetExhausted(Exception):
    pass


class _Partial:
    __slots__ = ("labels", "idle", "delta", "preds", "moves", "handled", "agenda")

    def __init__(self) -> None:
        self.labels: list[str] = [BOTTOM]
        self.idle: set[int] = set()
        self.delta: dict[tuple[int, str], int] = {}
        self.preds: dict[int, set[int]] = {0: set()}
        self.moves: dict[int, set[Move]] = {0: set()}
        self.handled: set[tuple[int, str]] = set()
        self.agenda: deque[tuple] = deque()

    def copy(self) -> "_Partial":
        other = _Partial.__new__(_Partial)
        other.labels = list(self.labels)
        other.idle = set(self.idle)
        other.delta = dict(self.delta)
        other.preds = {p: set(s) for p, s in self.preds.items()}
        other.moves = {p: set(s) for p, s in self.moves.items()}
        other.handled = set(self.handled)
        other.agenda = deque(self.agenda)
        return other

    def add_class(self, label: str, idle: bool = False) -> int:
        p = len(self.labels)
        self.labels.append(label)
        self.preds[p] = set()
        self.moves[p] = set()
        if idle:
            self.idle.add(p)
        return p

    def class_automaton(self) -> ClassAutomaton:
        return ClassAutomaton(tuple(self.labels), dict(self.delta), frozenset(self.idle))


class CandidateSearch:
    def __init__(
        self,
        automaton: AlternatingTreeAutomaton,
        caps: SearchCaps | None = None,
        *,
        prune: bool = True,
    ) -> None:
        self.automaton = automaton
        self.caps = caps or SearchCaps()
        self.prune = prune
        self.symbols = tuple(sorted(automaton.game.machine.stack_alphabet))
        self.single_symbol = len(self.symbols) == 1
        self.verifiers = automaton.verifier_states
        self.nodes = 0
        self.candidates = 0
        self.exhausted = False
        self._round_nodes = 0

    # bookkeeping

    def _tick(self) -> None:
        self.nodes += 1
        self._round_nodes += 1
        if self._round_nodes > self.caps.max_nodes:
            raise _BudgetExhausted

    def _lasso_fits(self, length: int, entry: int) -> bool:
        return entry <= self.caps.max_prefix and length - entry <= self.caps.max_period

    # moves and edges

    def _apply(self, part: _Partial, p: int, state: str, atom: Atom) -> None:
        part.moves[p].add(Move.of(state, atom))
        kind = atom.direction.kind
        if kind == "N":
            part.agenda.append(("state", p, atom.target))
        elif kind == "down":
            part.agenda.append(("down", p, atom.direction.symbol, atom.target))
        else:
            for parent in sorted(part.preds[p]):
                part.agenda.append(("state", parent, atom.target))

    def _link(self, part: _Partial, p: int, symbol: str, target: int | None) -> int:
        if target is None:
            target = part.add_class(symbol)
        part.delta[(p, symbol)] = target
        part.preds[target].add(p)
        for move in sorted(part.moves[target]):
            if move.is_up:
                part.agenda.append(("state", p, move.target))
        return target

    def _edge_options(self, part: _Partial, p: int, symbol: str, limit: int) -> list[int | None]:
        options: list[int | None] = []
        existing = [c for c in range(1, len(part.labels)) if part.labels[c] == symbol and c not in part.idle]
        for c in existing:
            if self.single_symbol and not self._lasso_fits(len(part.labels), c):
                continue
            options.append(c)
        if len(part.labels) - len(part.idle) < limit:
            if not self.single_symbol or len(part.labels) + 1 <= self.caps.max_prefix + self.caps.max_period:
                options.append(None)
        return options

    def _doomed(self, part: _Partial) -> bool:
        if not self.prune:
            return False
        candidate = self._candidate(part)
        return not check_traces(candidate, self.automaton).ok

    def _candidate(self, part: _Partial) -> RegularCandidate:
        classes = part.class_automaton()
        moves = {p: frozenset(s) for p, s in part.moves.items()}
        annotation = least_annotation(classes, moves, self.automaton.priorities, self.automaton.condition)
        return RegularCandidate(classes, moves, annotation, self.automaton.condition)

    # exploration

    def _explore(self, part: _Partial, limit: int) -> Iterator[RegularCandidate]:
        while part.agenda:
            self._tick()
            item = part.agenda.popleft()
            if item[0] == "state":
                _, p, state = item
                if (p, state) in part.handled:
                    continue
                part.handled.add((p, state))
                formula = self.automaton.formula(state, part.labels[p])
                atoms = [a for a in formula.atoms if a.target not in self.verifiers]
                if formula.kind == "and":
                    for atom in atoms:
                        self._apply(part, p, state, atom)
                    continue
                if not atoms:
                    return
                if len(atoms) == 1:
                    self._apply(part, p, state, atoms[0])
                    continue
                if self._doomed(part):
                    return
                for atom in atoms:
                    child = part.copy()
                    self._apply(child, p, state, atom)
                    yield from self._explore(child, limit)
                return

            _, p, symbol, target = item
            known = part.delta.get((p, symbol))
            if known is not None:
                part.agenda.append(("state", known, target))
                continue
            options = self._edge_options(part, p, symbol, limit)
            if not options:
                return
            if len(options) == 1:
                self._link(part, p, symbol, options[0])
                part.agenda.appendleft(item)
                continue
            if self._doomed(part):
                return
            for option in options:
                child = part.copy()
                self._link(child, p, symbol, option)
                child.agenda.appendleft(item)
                yield from self._explore(child, limit)
            return

        completed = self._complete(part, limit)
        if completed is not None:
            self.candidates += 1
            yield completed

    def _complete(self, part: _Partial, limit: int) -> RegularCandidate | None:
        if len(part.labels) != limit:
            return None
        part = part.copy()
        idle_of: dict[str, int] = {}
        p = 0
        while p < len(part.labels):
            for symbol in self.symbols:
                if (p, symbol) in part.delta:
                    continue
                target = None
                for c in range(1, len(part.labels)):
                    if part.labels[c] != symbol or any(m.is_up for m in part.moves[c]):
                        continue
                    if self.single_symbol and not self._lasso_fits(len(part.labels), c):
                        continue
                    target = c
                    break
                if target is None:
                    if symbol not in idle_of:
                        idle_of[symbol] = part.add_class(symbol, idle=True)
                    target = idle_of[symbol]
                part.delta[(p, symbol)] = target
                part.preds[target].add(p)
            p += 1
        if self.single_symbol:
            shape = part.class_automaton().lasso_shape()
            if shape is None or shape[0] > self.caps.max_prefix or shape[1] > self.caps.max_period:
                return None

        verifiers = self.automaton.verifiers
        for symbol in self.symbols:
            part.moves[0].add(Move(self.automaton.root, EPSILON, down(symbol), verifiers[symbol]))
        for c in range(1, len(part.labels)):
            own = verifiers[part.labels[c]]
            for symbol in self.symbols:
                part.moves[c].add(Move(own, EPSILON, down(symbol), verifiers[symbol]))
        return self._candidate(part)

    def round(self, classes: int) -> Iterator[RegularCandidate]:
        """Candidates with exactly ``classes`` active classes."""
        self._round_nodes = 0
        start = _Partial()
        start.agenda.append(("state", 0, self.automaton.root))
        try:
            yield from self._explore(start, classes)
        except _BudgetExhausted:
            self.exhausted = True
            logger.warning(
                "search round %d hit the node budget %d",
                classes,
                self.caps.max_nodes,
                extra={"event": "search_budget"},
            )
        logger.info(
            "search round %d: %d nodes, %d candidates so far",
            classes,
            self._round_nodes,
            self.candidates,
            extra={"event": "search_round"},
        )


def enumerate_candidates(
    automaton: AlternatingTreeAutomaton,
    caps: SearchCaps | None = None,
    *,
    prune: bool = False,
) -> Iterator[RegularCandidate]:
    """All candidates in nondecreasing number of classes up to the caps."""
    search = CandidateSearch(automaton, caps, prune=prune)
    for classes in range(1, search.caps.max_classes + 1):
        yield from search.round(classes)


def instantiate_candidate(
    automaton: AlternatingTreeAutomaton,
    classes: ClassAutomaton,
    choices: dict[int, dict[str, str]] | None = None,
) -> RegularCandidate:
    """Candidate for a fixed class automaton; ``choices[p][state]`` names Player 0's letter.

    Positions without a choice take the first atom of their disjunction.
    """
    choices = choices or {}
    preds = classes.predecessors
    moves: dict[int, set[Move]] = {p: set() for p in classes.classes}
    handled: set[tuple[int, str]] = set()
    agenda: deque[tuple[int, str]] = deque([(0, automaton.root)])
    while agenda:
        p, state = agenda.popleft()
        if (p, state) in handled:
            continue
        handled.add((p, state))
        formula = automaton.formula(state, classes.labels[p])
        atoms = list(formula.atoms)
        if formula.kind == "or" and atoms:
            pick = choices.get(p, {}).get(state)
            atoms = [a for a in atoms if a.letter == pick][:1] or atoms[:1]
        for atom in atoms:
            moves[p].add(Move.of(state, atom))
            kind = atom.direction.kind
            if kind == "N":
                agenda.append((p, atom.target))
            elif kind == "down":
                child = classes.successor(p, atom.direction.symbol)
                if child is not None:
                    agenda.append((child, atom.target))
            else:
                agenda.extend((parent, atom.target) for parent in preds[p])
    frozen = {p: frozenset(s) for p, s in moves.items()}
    annotation = least_annotation(classes, frozen, automaton.priorities, automaton.condition)
    return RegularCandidate(classes, frozen, annotation, automaton.condition)
