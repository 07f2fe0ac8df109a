"""Normal form: every rule is a single push, a skip, or a pop.

Multi-symbol pushes become ascending chains of single pushes through
intermediate ε-states. When some rule rewrites the symbol it reads, the top
symbol moves into the finite control and every stack cell stores the real
symbol one level below it, so rewrites become skips and no rule ever lowers
the stack transiently. Heights of real configurations are preserved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from pdgames_core import get_logger

from .models import (
    BOTTOM,
    EPSILON,
    Action,
    Configuration,
    PriorityFunction,
    PushdownMachine,
    Rule,
)

logger = get_logger("machine")


def is_normal_rule(rule: Rule) -> bool:
    action = rule.action
    if action is Action.PUSH:
        return len(rule.word) == 2
    return action in (Action.POP, Action.SKIP)


def is_normal_form(machine: PushdownMachine) -> bool:
    return all(is_normal_rule(r) for r in machine.rules)


def padding_priority(col: PriorityFunction) -> int:
    top = max(col.colors.values(), default=0)
    return top if top % 2 == 0 else top + 1


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


@dataclass(frozen=True)
class ConfigTranslation:
    mode: str = "identity"
    intermediates: frozenset[str] = frozenset()
    state_names: Mapping[tuple[str, str], str] = field(default_factory=dict)
    cell_names: Mapping[str, str] = field(default_factory=dict)

    @property
    def _state_origin(self) -> dict[str, tuple[str, str]]:
        return {v: k for k, v in self.state_names.items()}

    @property
    def _cell_origin(self) -> dict[str, str]:
        return {v: k for k, v in self.cell_names.items()}

    def encode(self, config: Configuration) -> Configuration:
        if self.mode != "top":
            return config
        state = self.state_names[(config.state, config.top)]
        cells = tuple(self.cell_names[s] for s in config.stack[1:])
        return Configuration(state, cells + (BOTTOM,))

    def decode(self, config: Configuration) -> Configuration | None:
        """Original configuration, or None for configurations inside an expansion chain."""
        if config.state in self.intermediates:
            return None
        if self.mode != "top":
            return config
        state, top = self._state_origin[config.state]
        cells = self._cell_origin
        below = tuple(cells[c] for c in config.stack[:-1])
        return Configuration(state, (top,) + below)


@dataclass(frozen=True)
class Normalization:
    machine: PushdownMachine
    col: PriorityFunction
    translation: ConfigTranslation
    origin: Mapping[str, str]

    @property
    def intermediates(self) -> frozenset[str]:
        return self.translation.intermediates

    def original_state(self, state: str) -> str | None:
        return self.origin.get(state)


def normalize(machine: PushdownMachine, col: PriorityFunction) -> Normalization:
    missing = col.missing(machine.states)
    if missing:
        raise ValueError(f"priority undefined for: {', '.join(missing)}")
    if is_normal_form(machine):
        result = Normalization(machine, col, ConfigTranslation(), {q: q for q in machine.states})
    elif all(r.action is not Action.REWRITE for r in machine.rules):
        result = _expand_chains(machine, col)
    else:
        result = _encode_top(machine, col)
    logger.info(
        "normalized %d rules into %d (%s)",
        len(machine.rules),
        len(result.machine.rules),
        result.translation.mode,
        extra={"event": "normalized"},
    )
    return result


def _expand_chains(machine: PushdownMachine, col: PriorityFunction) -> Normalization:
    taken = set(machine.states)
    chains: dict[tuple[str, tuple[str, ...]], str] = {}

    def chain_state(target: str, pending: tuple[str, ...]) -> str:
        if not pending:
            return target
        key = (target, pending)
        if key not in chains:
            chains[key] = _fresh(f"{target}<{'.'.join(pending)}>", taken)
        return chains[key]

    rules: list[Rule] = []
    for rule in machine.rules:
        if is_normal_rule(rule):
            rules.append(rule)
            continue
        pending = rule.pushed
        below = pending[-1]
        pending = pending[:-1]
        rules.append(Rule(rule.state, rule.letter, rule.top, chain_state(rule.target, pending), (below, rule.top)))
        while pending:
            source = chain_state(rule.target, pending)
            symbol = pending[-1]
            pending = pending[:-1]
            rules.append(Rule(source, EPSILON, below, chain_state(rule.target, pending), (symbol, below)))
            below = symbol

    intermediates = frozenset(chains.values())
    fill = padding_priority(col)
    colors = dict(col.colors) | {q: fill for q in intermediates}
    encoded = PushdownMachine(
        states=machine.states | intermediates,
        input_alphabet=machine.input_alphabet,
        stack_alphabet=machine.stack_alphabet,
        initial_state=machine.initial_state,
        rules=tuple(rules),
        deterministic=machine.deterministic,
    )
    return Normalization(
        encoded,
        PriorityFunction(colors),
        ConfigTranslation(mode="chain", intermediates=intermediates),
        {q: q for q in machine.states},
    )


def _encode_top(machine: PushdownMachine, col: PriorityFunction) -> Normalization:
    tops = machine.tops
    taken: set[str] = set()
    cells = {y: _fresh(f"<{y}>", taken) for y in tops}
    names = {(q, x): _fresh(f"{q}[{x}]", taken) for q in sorted(machine.states) for x in tops}
    chains: dict[tuple[str, tuple[str, ...]], str] = {}

    def chain_state(final: str, remaining: tuple[str, ...]) -> str:
        if not remaining:
            return final
        key = (final, remaining)
        if key not in chains:
            chains[key] = _fresh(f"{final}<{'.'.join(remaining)}>", taken)
        return chains[key]

    rules: list[Rule] = []
    for rule in machine.rules:
        source = names[(rule.state, rule.top)]
        if rule.top != BOTTOM:
            unders = [cells[y] for y in tops]
            if not rule.word:
                for y in tops:
                    rules.append(Rule(source, rule.letter, cells[y], names[(rule.target, y)], ()))
                continue
            written = rule.word
            pushed = [cells[z] for z in reversed(written[1:])]
        else:
            unders = [BOTTOM]
            written = rule.word[:-1]
            pushed = [cells[BOTTOM]] + [cells[z] for z in reversed(written[1:])] if written else []
        final = names[(rule.target, written[0] if written else BOTTOM)]
        if not pushed:
            for under in unders:
                rules.append(Rule(source, rule.letter, under, final, (under,)))
            continue
        remaining = tuple(pushed[1:])
        for under in unders:
            rules.append(Rule(source, rule.letter, under, chain_state(final, remaining), (pushed[0], under)))
        below = pushed[0]
        while remaining:
            src = chain_state(final, remaining)
            cell, remaining = remaining[0], remaining[1:]
            rules.append(Rule(src, EPSILON, below, chain_state(final, remaining), (cell, below)))
            below = cell

    intermediates = frozenset(chains.values())
    fill = padding_priority(col)
    colors = {name: col[q] for (q, _), name in names.items()} | {q: fill for q in intermediates}
    encoded = PushdownMachine(
        states=frozenset(names.values()) | intermediates,
        input_alphabet=machine.input_alphabet,
        stack_alphabet=frozenset(cells.values()),
        initial_state=names[(machine.initial_state, BOTTOM)],
        rules=tuple(rules),
        deterministic=machine.deterministic,
    )
    translation = ConfigTranslation(
        mode="top",
        intermediates=intermediates,
        state_names=names,
        cell_names=cells,
    )
    return Normalization(encoded, PriorityFunction(colors), translation, {v: q for (q, _), v in names.items()})
