"""Stair-parity acceptors: conversion from parity DPDA and lasso-word acceptance."""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from pdgames_core import get_logger

from .formats import check_format
from .models import (
    BOTTOM,
    EPSILON,
    Condition,
    Configuration,
    FormatDescriptor,
    LassoRun,
    Player,
    PriorityFunction,
    PushdownMachine,
    Rule,
)
from .semantics import apply_rule
from .steps import evaluate_lasso

logger = get_logger("machine")


def _state(q: str, m: int, e: int) -> str:
    return f"{q}@{m}:{e}"


def _symbol(x: str, mu: int) -> str:
    return f"{x}@{mu}"


def dpda_to_stdpda(machine: PushdownMachine, col: PriorityFunction) -> tuple[PushdownMachine, PriorityFunction]:
    """Equivalent stair-parity DPDA for a parity DPDA.

    State ``q@m:e``: ``m`` is the least priority seen since the current level
    became the top, ``e`` the priority emitted at this position. Symbol ``X@mu``
    stores the ``m`` of the level beneath it. Between two consecutive Steps
    positions every priority of the window is folded into the emitted one.
    """
    verdict = check_format(machine, FormatDescriptor(deterministic=True))
    if not verdict.ok:
        raise ValueError("nondeterministic input: " + "; ".join(verdict.violations))
    missing = col.missing(machine.states)
    if missing:
        raise ValueError(f"priority undefined for: {', '.join(missing)}")

    k = max(col.k, 1)
    levels = range(k)
    rules: list[Rule] = []
    for rule in machine.rules:
        c = col[rule.target]
        for m in levels:
            for e in levels:
                source = _state(rule.state, m, e)
                if rule.top == BOTTOM:
                    written = rule.word[:-1]
                    if not written:
                        rules.append(Rule(source, rule.letter, BOTTOM, _state(rule.target, min(m, c), c), (BOTTOM,)))
                    else:
                        word = tuple(_symbol(x, c) for x in written[:-1]) + (_symbol(written[-1], m), BOTTOM)
                        rules.append(Rule(source, rule.letter, BOTTOM, _state(rule.target, c, c), word))
                    continue
                for mu in levels:
                    top = _symbol(rule.top, mu)
                    size = len(rule.word)
                    if size == 0:
                        target = _state(rule.target, min(mu, m, c), min(m, c))
                        word: tuple[str, ...] = ()
                    elif size == 1:
                        target = _state(rule.target, min(m, c), c)
                        word = (_symbol(rule.word[0], mu),)
                    else:
                        target = _state(rule.target, c, c)
                        word = (
                            tuple(_symbol(x, c) for x in rule.word[:-2])
                            + (_symbol(rule.word[-2], m), _symbol(rule.word[-1], mu))
                        )
                    rules.append(Rule(source, rule.letter, top, target, word))

    states = frozenset(_state(q, m, e) for q in machine.states for m in levels for e in levels)
    symbols = frozenset(_symbol(x, mu) for x in machine.stack_alphabet for mu in levels)
    c0 = col[machine.initial_state]
    converted = PushdownMachine(
        states=states,
        input_alphabet=machine.input_alphabet,
        stack_alphabet=symbols,
        initial_state=_state(machine.initial_state, c0, c0),
        rules=tuple(rules),
        deterministic=True,
    )
    colors = PriorityFunction({_state(q, m, e): e for q in machine.states for m in levels for e in levels})
    logger.info(
        "stair conversion: %d states -> %d", len(machine.states), len(states), extra={"event": "stair_converted"}
    )
    return converted, colors


def run_on_lasso_word(
    machine: PushdownMachine,
    prefix: Sequence[str],
    period: Sequence[str],
    max_steps: int = 20_000,
) -> LassoRun | None:
    """Lasso of the unique run on ``prefix · period^ω``; None when the run blocks or stalls."""
    if not period:
        raise ValueError("period must be nonempty")
    config = machine.initial
    read = 0
    history: list[Configuration] = []
    consumed: list[int] = []
    seen: dict[tuple[str, str, int], list[int]] = defaultdict(list)

    for _ in range(max_steps):
        now = len(history)
        history.append(config)
        consumed.append(read)
        phase = (read - len(prefix)) % len(period) if read >= len(prefix) else None
        if phase is not None:
            key = (config.state, config.top, phase)
            for j in reversed(seen[key]):
                floor = history[j].height
                if min(c.height for c in history[j : now + 1]) < floor:
                    continue
                if consumed[j] == read:
                    # ε-only cycle never reads the rest of the word
                    return None
                return LassoRun(tuple(history[:j]), tuple(history[j:now]), config)
            seen[key].append(now)

        enabled = machine.rules_at(config.state, config.top)
        eps = [r for r in enabled if r.letter == EPSILON]
        if eps:
            config = apply_rule(eps[0], config)
            continue
        letter = prefix[read] if read < len(prefix) else period[(read - len(prefix)) % len(period)]
        chosen = [r for r in enabled if r.letter == letter]
        if not chosen:
            return None
        config = apply_rule(chosen[0], config)
        read += 1
    raise RuntimeError(f"no lasso within {max_steps} steps")


def accepts_lasso_word(
    machine: PushdownMachine,
    col: PriorityFunction,
    kind: Condition,
    prefix: Sequence[str],
    period: Sequence[str],
) -> bool:
    if not machine.deterministic:
        verdict = check_format(machine, FormatDescriptor(deterministic=True))
        if not verdict.ok:
            raise ValueError("acceptance is defined here for deterministic machines only")
    run = run_on_lasso_word(machine, prefix, period)
    if run is None:
        return False
    return evaluate_lasso(run, col, Condition(kind)) is Player.P0
