"""Consistency of a candidate's strategy labels with the automaton."""

from __future__ import annotations

from dataclasses import dataclass, field

from pdgames_machine import BOTTOM

from .automaton import AlternatingTreeAutomaton
from .candidate import RegularCandidate


@dataclass(frozen=True)
class ConsistencyVerdict:
    ok: bool
    violations: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def _demanded(candidate: RegularCandidate, automaton: AlternatingTreeAutomaton) -> dict[int, set[str]]:
    """States each class must handle: targets of moves that land on it."""
    need: dict[int, set[str]] = {p: set() for p in candidate.classes.classes}
    preds = candidate.classes.predecessors
    for p in candidate.classes.classes:
        for move in candidate.moves[p]:
            if move.is_stay:
                need[p].add(move.target)
            elif move.is_down:
                child = candidate.classes.successor(p, move.direction.symbol)
                if child is not None:
                    need[child].add(move.target)
            else:
                for parent in preds[p]:
                    need[parent].add(move.target)
    return need


def check_consistency(candidate: RegularCandidate, automaton: AlternatingTreeAutomaton) -> ConsistencyVerdict:
    classes = candidate.classes
    violations: list[str] = []

    for (p, symbol), q in sorted(classes.delta.items()):
        if classes.labels[q] != symbol:
            violations.append(f"structure: class {q} entered by {symbol} is labelled {classes.labels[q]}")
    if classes.labels[0] != BOTTOM:
        violations.append("structure: root class is not labelled with the bottom symbol")

    for p in classes.classes:
        label = classes.labels[p]
        for move in sorted(candidate.moves[p]):
            formula = automaton.formula(move.source, label)
            if move.atom not in formula.atoms:
                violations.append(f"structure: class {p}: {move} is not an atom of δ({move.source}, {label})")
            if move.is_up and p == 0:
                violations.append(f"condition 2: class 0: {move} leaves the root upwards")
            if move.is_down and classes.successor(p, move.direction.symbol) is None:
                violations.append(f"condition 2: class {p}: {move} follows an undefined edge")

    # condition 1: every handled state's formula is satisfied by its chosen atoms
    need = _demanded(candidate, automaton)
    need[0].add(automaton.root)
    for p in classes.classes:
        label = classes.labels[p]
        for state in sorted(need[p]):
            chosen = {m.atom for m in candidate.moves[p] if m.source == state}
            formula = automaton.formula(state, label)
            if not formula.satisfied_by(chosen):
                cond = "condition 3" if (p == 0 and state == automaton.root) else "condition 1"
                violations.append(f"{cond}: class {p}: δ({state}, {label}) = {formula} not satisfied")

    return ConsistencyVerdict(not violations, tuple(violations))
