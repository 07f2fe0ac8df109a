"""Text format for games and strategies.

Header directives, one per line::

    game NAME                  (strategy NAME for strategy files)
    condition parity|stair
    format deterministic oneCounter blind
    visibly calls=a returns=b internals=c
    input a b c
    output a b                 (strategies only)
    stack A
    states q0 q1
    init q0
    owner q0=1 q1=0
    color q0=2 q1=0
    player 0                   (strategies only)

Rule lines: ``q a T -> q' ACTION`` with ``ACTION`` one of ``push γ``, ``pop``,
``skip``, ``rewrite γ``. ``~`` is the empty letter, ``_`` the bottom symbol and
``*`` on the top position stands for every stack symbol and the bottom.
Strategy rules end with ``/ OUT``. ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from pdgames_machine import (
    BOTTOM,
    EPSILON,
    Action,
    Condition,
    FormatDescriptor,
    Player,
    PriorityFunction,
    PushdownMachine,
    Rule,
    VisiblyAlphabet,
)

from .models import GameSpec
from .strategy import StrategyPDA, StrategyRule

EPSILON_TOKEN = "~"
BOTTOM_TOKEN = "_"
ANY_TOKEN = "*"


class GameFileError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass
class _Draft:
    kind: str = ""
    name: str = ""
    condition: Condition = Condition.PARITY
    flags: list[str] = field(default_factory=list)
    visibly: VisiblyAlphabet | None = None
    inputs: list[str] | None = None
    outputs: list[str] | None = None
    stack: list[str] = field(default_factory=list)
    states: list[str] | None = None
    init: str | None = None
    owner: dict[str, Player] = field(default_factory=dict)
    color: dict[str, int] = field(default_factory=dict)
    player: Player = Player.P0
    rules: list[tuple[int, list[str]]] = field(default_factory=list)
    last_line: int = 0


def _letter(token: str) -> str:
    return EPSILON if token == EPSILON_TOKEN else token


def _symbol(token: str) -> str:
    return BOTTOM if token == BOTTOM_TOKEN else token


def _assignments(line: int, tokens: Iterable[str]) -> dict[str, str]:
    out = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep or not key:
            raise GameFileError(line, f"expected NAME=VALUE, got {token!r}")
        out[key] = value
    return out


def _read(text: str) -> _Draft:
    draft = _Draft()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        draft.last_line = number
        if not line:
            continue
        tokens = line.split()
        if "->" in tokens:
            draft.rules.append((number, tokens))
            continue
        head, args = tokens[0], tokens[1:]
        if head in ("game", "strategy"):
            if draft.kind:
                raise GameFileError(number, f"second {head} header")
            if len(args) != 1:
                raise GameFileError(number, f"{head} needs exactly one name")
            draft.kind, draft.name = head, args[0]
        elif head == "condition":
            try:
                draft.condition = Condition(args[0] if args else "")
            except ValueError:
                raise GameFileError(number, "condition must be parity or stair") from None
        elif head == "format":
            draft.flags = args
        elif head == "visibly":
            parts = _assignments(number, args)
            unknown = set(parts) - {"calls", "returns", "internals"}
            if unknown:
                raise GameFileError(number, f"unknown visibly class {sorted(unknown)[0]}")
            split = {k: frozenset(v for v in parts.get(k, "").split(",") if v) for k in ("calls", "returns", "internals")}
            try:
                draft.visibly = VisiblyAlphabet(**split)
            except ValueError as exc:
                raise GameFileError(number, str(exc)) from None
        elif head == "input":
            draft.inputs = args
        elif head == "output":
            draft.outputs = args
        elif head == "stack":
            draft.stack = args
        elif head == "states":
            if not args:
                raise GameFileError(number, "empty states section")
            draft.states = args
        elif head == "init":
            if len(args) != 1:
                raise GameFileError(number, "init needs exactly one state")
            draft.init = args[0]
        elif head == "owner":
            for state, value in _assignments(number, args).items():
                if value not in ("0", "1"):
                    raise GameFileError(number, f"owner of {state} must be 0 or 1")
                draft.owner[state] = Player.from_index(value)
        elif head == "color":
            for state, value in _assignments(number, args).items():
                if not value.isdigit():
                    raise GameFileError(number, f"priority of {state} must be a natural number")
                draft.color[state] = int(value)
        elif head == "player":
            if args not in (["0"], ["1"]):
                raise GameFileError(number, "player must be 0 or 1")
            draft.player = Player.from_index(args[0])
        else:
            raise GameFileError(number, f"unknown directive {head!r}")
    if not draft.kind:
        raise GameFileError(1, "missing game or strategy header")
    if draft.states is None:
        raise GameFileError(draft.last_line, "empty states section")
    if draft.init is None:
        raise GameFileError(draft.last_line, "missing init")
    return draft


@dataclass(frozen=True)
class _ParsedRule:
    rule: Rule
    output: str


def _expand_rule(number: int, tokens: list[str], stack: list[str], with_output: bool) -> list[_ParsedRule]:
    output = EPSILON
    if with_output:
        if "/" not in tokens:
            raise GameFileError(number, "strategy rule needs '/ OUT'")
        cut = tokens.index("/")
        if len(tokens) != cut + 2:
            raise GameFileError(number, "expected exactly one output letter after '/'")
        output = _letter(tokens[cut + 1])
        tokens = tokens[:cut]
    arrow = tokens.index("->")
    if arrow != 3 or len(tokens) < 6:
        raise GameFileError(number, "expected 'q a T -> q2 ACTION'")
    state, letter, top = tokens[0], _letter(tokens[1]), tokens[2]
    target, action, args = tokens[4], tokens[5], [_symbol(t) for t in tokens[6:]]
    try:
        action_kind = Action(action)
    except ValueError:
        raise GameFileError(number, f"unknown action {action!r}") from None
    if action_kind in (Action.POP, Action.SKIP) and args:
        raise GameFileError(number, f"{action} takes no symbols")
    if action_kind in (Action.PUSH, Action.REWRITE) and not args:
        raise GameFileError(number, f"{action} needs symbols")
    if top == ANY_TOKEN:
        if action_kind in (Action.POP, Action.REWRITE):
            raise GameFileError(number, f"{action} cannot be applied on every top")
        tops = list(stack) + [BOTTOM]
    else:
        tops = [_symbol(top)]
    out = []
    for t in tops:
        if action_kind is Action.PUSH:
            word = tuple(args) + (t,)
        elif action_kind is Action.SKIP:
            word = (t,)
        elif action_kind is Action.POP:
            if t == BOTTOM:
                raise GameFileError(number, "the bottom symbol cannot be popped")
            word = ()
        else:
            word = tuple(args)
            if t == BOTTOM and (not word or word[-1] != BOTTOM):
                raise GameFileError(number, "rewrite of the bottom must end with _")
        out.append(_ParsedRule(Rule(state, letter, t, target, word), output))
    return out


def _descriptor(draft: _Draft) -> FormatDescriptor:
    try:
        return FormatDescriptor.of(*draft.flags, visibly=draft.visibly)
    except ValueError as exc:
        raise GameFileError(draft.last_line, str(exc)) from None


def _rules(draft: _Draft, with_output: bool) -> list[_ParsedRule]:
    rules: list[_ParsedRule] = []
    for number, tokens in draft.rules:
        rules.extend(_expand_rule(number, tokens, draft.stack, with_output))
    return rules


def parse_game(text: str) -> GameSpec:
    draft = _read(text)
    if draft.kind != "game":
        raise GameFileError(1, "expected a game file")
    fmt = _descriptor(draft)
    rules = [p.rule for p in _rules(draft, with_output=False)]
    states = draft.states or []
    inputs = draft.inputs if draft.inputs is not None else sorted({r.letter for r in rules if r.letter})
    try:
        machine = PushdownMachine(
            states=frozenset(states),
            input_alphabet=frozenset(inputs),
            stack_alphabet=frozenset(draft.stack),
            initial_state=draft.init or "",
            rules=tuple(rules),
            deterministic=fmt.deterministic,
        )
        owner = {q: draft.owner.get(q, Player.P0) for q in states}
        return GameSpec(
            machine=machine,
            owner=owner,
            col=PriorityFunction({q: draft.color.get(q, 0) for q in states}),
            condition=draft.condition,
            name=draft.name,
            fmt=fmt,
        )
    except ValueError as exc:
        if isinstance(exc, GameFileError):
            raise
        raise GameFileError(draft.last_line, str(exc)) from None


def load_game(path: Path | str) -> GameSpec:
    return parse_game(Path(path).read_text(encoding="utf-8"))


def _token(symbol: str) -> str:
    return BOTTOM_TOKEN if symbol == BOTTOM else symbol


def _action_text(rule: Rule) -> str:
    action = rule.action
    if action is Action.POP:
        return "pop"
    if action is Action.SKIP:
        return "skip"
    if action is Action.PUSH:
        return "push " + " ".join(_token(s) for s in rule.pushed)
    return "rewrite " + " ".join(_token(s) for s in rule.word)


def format_rule_line(rule: Rule, output: str | None = None) -> str:
    text = (
        f"{rule.state} {rule.letter or EPSILON_TOKEN} {_token(rule.top)} -> {rule.target} {_action_text(rule)}"
    )
    if output is not None:
        text += f" / {output or EPSILON_TOKEN}"
    return text


def _format_lines(fmt: FormatDescriptor) -> list[str]:
    lines = []
    if fmt.flags:
        lines.append("format " + " ".join(fmt.flags))
    if fmt.visibly is not None:
        v = fmt.visibly
        lines.append(
            f"visibly calls={','.join(sorted(v.calls))} returns={','.join(sorted(v.returns))}"
            f" internals={','.join(sorted(v.internals))}"
        )
    return lines


def format_game(game: GameSpec) -> str:
    m = game.machine
    states = sorted(m.states)
    lines = [f"game {game.name}", f"condition {game.condition.value}"]
    lines += _format_lines(game.fmt)
    lines += [
        "input " + " ".join(sorted(m.input_alphabet)),
        "stack " + " ".join(sorted(m.stack_alphabet)),
        "states " + " ".join(states),
        f"init {m.initial_state}",
        "owner " + " ".join(f"{q}={game.owner[q].index}" for q in states),
        "color " + " ".join(f"{q}={game.col[q]}" for q in states),
        "",
    ]
    lines += [format_rule_line(r) for r in m.rules]
    return "\n".join(lines) + "\n"


def parse_strategy(text: str) -> StrategyPDA:
    """Parse a strategy file into a ``StrategyPDA``."""
    draft = _read(text)
    if draft.kind != "strategy":
        raise GameFileError(1, "expected a strategy file")
    fmt = _descriptor(draft)
    parsed = _rules(draft, with_output=True)
    rules = tuple(
        StrategyRule(p.rule.state, p.rule.letter, p.rule.top, p.rule.target, p.rule.word, p.output) for p in parsed
    )
    try:
        return StrategyPDA(
            name=draft.name,
            player=draft.player,
            states=frozenset(draft.states or []),
            input_alphabet=frozenset(draft.inputs or []),
            output_alphabet=frozenset(draft.outputs or []),
            stack_alphabet=frozenset(draft.stack),
            initial_state=draft.init or "",
            rules=rules,
            fmt=fmt,
        )
    except ValueError as exc:
        raise GameFileError(draft.last_line, str(exc)) from None


def load_strategy(path: Path | str) -> StrategyPDA:
    return parse_strategy(Path(path).read_text(encoding="utf-8"))


def format_strategy(strategy: StrategyPDA) -> str:
    lines = [f"strategy {strategy.name}", f"player {strategy.player.index}"]
    lines += _format_lines(strategy.fmt)
    lines += [
        "input " + " ".join(sorted(strategy.input_alphabet)),
        "output " + " ".join(sorted(strategy.output_alphabet)),
        "stack " + " ".join(sorted(strategy.stack_alphabet)),
        "states " + " ".join(sorted(strategy.states)),
        f"init {strategy.initial_state}",
        "",
    ]
    lines += [format_rule_line(r.as_rule(), r.output) for r in strategy.rules]
    return "\n".join(lines) + "\n"
