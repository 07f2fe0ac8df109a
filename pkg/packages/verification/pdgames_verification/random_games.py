"""Seeded random corpora: closed bounded-height games and small parity DPDA."""

from __future__ import annotations

import numpy as np

from pdgames_arena import GameSpec
from pdgames_machine import (
    BOTTOM,
    EPSILON,
    FormatDescriptor,
    Player,
    PriorityFunction,
    PushdownMachine,
    Rule,
    VisiblyAlphabet,
)

GAME_KINDS = ("generic", "realtime", "visibly", "oneCounter")
LETTERS = ("a", "b", "c")


def _pick(rng: np.random.Generator, items):
    return items[int(rng.integers(len(items)))]


def _finish(
    rng: np.random.Generator,
    states: list[str],
    letters: tuple[str, ...],
    symbols: list[str],
    rules: list[Rule],
    max_priority: int,
    name: str,
    fmt: FormatDescriptor,
    owner: dict[str, Player] | None = None,
) -> GameSpec:
    machine = PushdownMachine(
        states=frozenset(states),
        input_alphabet=frozenset(letters),
        stack_alphabet=frozenset(symbols),
        initial_state=states[0],
        rules=tuple(rules),
        deterministic=True,
    )
    if owner is None:
        owner = {q: Player.from_index(int(rng.integers(2))) for q in states}
    col = PriorityFunction({q: int(rng.integers(max_priority + 1)) for q in states})
    return GameSpec(machine, owner, col, name=name, fmt=fmt)


def _closed_rules(
    rng: np.random.Generator,
    states: list[str],
    letters: tuple[str, ...],
    symbols: list[str],
    *,
    epsilon: bool,
    multi: bool,
) -> list[Rule]:
    """Pushes only put symbols above strictly lower ones, so heights stay at most ``len(symbols) + 1``."""
    order = {BOTTOM: -1} | {s: i for i, s in enumerate(symbols)}
    rules: list[Rule] = []
    for q in states:
        for top in [BOTTOM] + symbols:
            higher = [s for s in symbols if order[s] > order[top]]
            actions = ["skip"] + (["pop"] if top != BOTTOM else []) + (["push"] if higher else [])
            if multi and len(higher) >= 2:
                actions.append("push2")
            if multi and top != BOTTOM and higher:
                actions.append("rewrite")
            if epsilon and rng.random() < 0.15:
                chosen: list[str] = [EPSILON]
            else:
                count = int(rng.integers(1, len(letters) + 1))
                chosen = sorted(rng.choice(letters, size=count, replace=False).tolist())
            for letter in chosen:
                action = _pick(rng, actions)
                target = _pick(rng, states)
                if action == "skip":
                    word: tuple[str, ...] = (top,)
                elif action == "pop":
                    word = ()
                elif action == "push":
                    word = (_pick(rng, higher), top)
                elif action == "push2":
                    low, high = sorted(rng.choice(len(higher), size=2, replace=False).tolist())
                    word = (higher[high], higher[low], top)
                else:
                    word = (_pick(rng, higher),)
                rules.append(Rule(q, letter, top, target, word))
    return rules


def _visibly_rules(rng: np.random.Generator, states: list[str], symbols: list[str]) -> tuple[list[Rule], VisiblyAlphabet]:
    """Ground states call into raised states, raised states return; heights stay at most 2."""
    valph = VisiblyAlphabet(calls={"c"}, returns={"r"}, internals={"a", "b"})
    half = max(1, len(states) // 2)
    ground, raised = states[:half], states[half:] or states[:1]
    tops = [BOTTOM] + symbols
    rules: list[Rule] = []
    for q in states:
        internals = [x for x in ("a", "b") if rng.random() < 0.6] or ["a"]
        layer = ground if q in ground else raised
        for letter in internals:
            target = _pick(rng, layer)
            rules.extend(Rule(q, letter, t, target, (t,)) for t in tops)
        if q in ground and q not in raised:
            pushed = _pick(rng, symbols)
            target = _pick(rng, raised)
            rules.extend(Rule(q, "c", t, target, (pushed, t)) for t in tops)
            if rng.random() < 0.5:
                rules.append(Rule(q, "r", BOTTOM, _pick(rng, ground), (BOTTOM,)))
        else:
            for s in symbols:
                rules.append(Rule(q, "r", s, _pick(rng, ground), ()))
    return rules, valph


def _one_counter_rules(rng: np.random.Generator, states: list[str], letters: tuple[str, ...]) -> list[Rule]:
    """Single symbol ``A``; pushes only on the empty counter, so heights stay at most 2."""
    rules: list[Rule] = []
    for q in states:
        for top in (BOTTOM, "A"):
            count = int(rng.integers(1, len(letters) + 1))
            for letter in sorted(rng.choice(letters, size=count, replace=False).tolist()):
                target = _pick(rng, states)
                if top == BOTTOM:
                    word = _pick(rng, [("A", BOTTOM), (BOTTOM,)])
                else:
                    word = _pick(rng, [(), ("A",)])
                rules.append(Rule(q, letter, top, target, word))
    return rules


def random_closed_game(
    rng: np.random.Generator,
    *,
    kind: str = "generic",
    states: int = 4,
    symbols: int = 2,
    max_priority: int = 3,
    name: str = "random",
) -> GameSpec:
    """Deterministic game whose reachable heights stay within ``symbols + 1`` (2 for visibly and one-counter)."""
    if kind not in GAME_KINDS:
        raise ValueError(f"unknown game kind {kind!r}")
    if states < 1 or symbols < 1:
        raise ValueError("a random game needs at least one state and one stack symbol")
    names = [f"s{i}" for i in range(states)]
    stack = [chr(ord("A") + i) for i in range(symbols)]
    if kind == "visibly":
        rules, valph = _visibly_rules(rng, names, stack)
        fmt = FormatDescriptor.of("deterministic", "realtime", "visibly", visibly=valph)
        return _finish(rng, names, ("a", "b", "c", "r"), stack, rules, max_priority, name, fmt)
    if kind == "oneCounter":
        rules = _one_counter_rules(rng, names, LETTERS)
        fmt = FormatDescriptor.of("deterministic", "realtime", "oneCounter")
        return _finish(rng, names, LETTERS, ["A"], rules, max_priority, name, fmt)
    realtime = kind == "realtime"
    rules = _closed_rules(rng, names, LETTERS, stack, epsilon=not realtime, multi=realtime)
    flags = ("deterministic", "realtime") if realtime else ("deterministic",)
    return _finish(rng, names, LETTERS, stack, rules, max_priority, name, FormatDescriptor.of(*flags))


def random_dpda(
    rng: np.random.Generator,
    *,
    states: int = 3,
    letters: int = 2,
    symbols: int = 1,
    max_priority: int = 2,
) -> tuple[PushdownMachine, PriorityFunction]:
    """Complete deterministic realtime parity DPDA: every (state, top, letter) has a rule."""
    names = [f"q{i}" for i in range(states)]
    alphabet = [chr(ord("a") + i) for i in range(letters)]
    stack = [chr(ord("A") + i) for i in range(symbols)]
    rules: list[Rule] = []
    for q in names:
        for top in [BOTTOM] + stack:
            for letter in alphabet:
                target = _pick(rng, names)
                roll = rng.random()
                if roll < 0.35:
                    word: tuple[str, ...] = (_pick(rng, stack), top)
                elif roll < 0.6 and top != BOTTOM:
                    word = ()
                else:
                    word = (top,)
                rules.append(Rule(q, letter, top, target, word))
    machine = PushdownMachine(
        states=frozenset(names),
        input_alphabet=frozenset(alphabet),
        stack_alphabet=frozenset(stack),
        initial_state=names[0],
        rules=tuple(rules),
        deterministic=True,
    )
    return machine, PriorityFunction({q: int(rng.integers(max_priority + 1)) for q in names})
