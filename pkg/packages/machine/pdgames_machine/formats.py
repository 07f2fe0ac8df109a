"""Format predicates: deterministic, realtime, visibly, one-counter, blind."""

from __future__ import annotations

from collections import defaultdict

from .models import (
    BOTTOM,
    EPSILON,
    Action,
    FormatDescriptor,
    FormatVerdict,
    PushdownMachine,
    Rule,
    VisiblyAlphabet,
    determinism_violations,
)


def check_format(machine: PushdownMachine, fmt: FormatDescriptor) -> FormatVerdict:
    violations: list[str] = []
    if fmt.deterministic:
        violations.extend(f"deterministic: {v}" for v in determinism_violations(machine.rules))
    if fmt.realtime:
        violations.extend(f"realtime: {r}: ε-transition" for r in machine.rules if r.letter == EPSILON)
    if fmt.one_counter and len(machine.stack_alphabet) != 1:
        violations.append(f"oneCounter: stack alphabet size {len(machine.stack_alphabet)}")
    if fmt.blind:
        violations.extend(_blind_violations(machine))
    if fmt.visibly is not None:
        violations.extend(_visibly_violations(machine, fmt.visibly))
    return FormatVerdict(ok=not violations, violations=tuple(violations))


def _as_counter(word: tuple[str, ...], symbol: str) -> tuple[str, ...]:
    return tuple(symbol if s == BOTTOM else s for s in word)


def _blind_violations(machine: PushdownMachine) -> list[str]:
    if len(machine.stack_alphabet) != 1:
        return []
    (counter,) = machine.stack_alphabet
    out = []
    for rule in machine.rules:
        if rule.top != BOTTOM:
            continue
        twin = Rule(rule.state, rule.letter, counter, rule.target, _as_counter(rule.word, counter))
        if twin not in machine.rules_at(rule.state, counter):
            out.append(f"blind: {rule}: enabled on the empty stack but not identically on {counter}")
    return out


def _visibly_violations(machine: PushdownMachine, valph: VisiblyAlphabet) -> list[str]:
    out: list[str] = []
    unclassified = machine.input_alphabet - valph.letters
    if unclassified:
        out.append(f"visibly: letters outside the partition: {', '.join(sorted(unclassified))}")
    tops = machine.tops
    grouped: dict[tuple[str, str], list[Rule]] = defaultdict(list)
    for rule in machine.rules:
        if rule.letter == EPSILON:
            out.append(f"visibly: {rule}: ε-transition")
            continue
        kind = valph.classify(rule.letter)
        if kind == "call":
            if rule.action is not Action.PUSH or len(rule.word) != 2:
                out.append(f"visibly: {rule}: call must push exactly one symbol")
            else:
                grouped[(rule.state, rule.letter)].append(rule)
        elif kind == "internal":
            if rule.action is not Action.SKIP:
                out.append(f"visibly: {rule}: internal must leave the stack unchanged")
            else:
                grouped[(rule.state, rule.letter)].append(rule)
        elif kind == "return":
            if rule.top == BOTTOM and rule.action is not Action.SKIP:
                out.append(f"visibly: {rule}: return on the empty stack must skip")
            elif rule.top != BOTTOM and rule.action is not Action.POP:
                out.append(f"visibly: {rule}: return must pop")
    # calls and internals may not look at the top of the stack
    for (state, letter), rules in sorted(grouped.items()):
        effects = {(r.target, r.word[0] if len(r.word) == 2 else None) for r in rules}
        if len(effects) > 1:
            out.append(f"visibly: ({state}, {letter}): effect depends on the stack top")
        covered = {r.top for r in rules}
        if covered != set(tops):
            missing = ", ".join(t for t in tops if t not in covered)
            out.append(f"visibly: ({state}, {letter}): undefined on top {missing}")
    return out
