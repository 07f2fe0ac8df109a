"""Pushdown machine data model: rules, configurations, priorities, formats and lasso runs."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping


EPSILON = ""
BOTTOM = "⊥"

FORMAT_FLAGS = ("deterministic", "realtime", "visibly", "oneCounter", "blind")


class Player(str, Enum):
    P0 = "Player0"
    P1 = "Player1"

    @property
    def opponent(self) -> "Player":
        return Player.P1 if self is Player.P0 else Player.P0

    @property
    def index(self) -> int:
        return 0 if self is Player.P0 else 1

    @classmethod
    def from_index(cls, value: int | str) -> "Player":
        return cls.P0 if int(value) == 0 else cls.P1

    @classmethod
    def of_priority(cls, priority: int) -> "Player":
        return cls.P0 if priority % 2 == 0 else cls.P1


class Condition(str, Enum):
    PARITY = "parity"
    STAIR = "stair"


class Action(str, Enum):
    PUSH = "push"
    POP = "pop"
    SKIP = "skip"
    REWRITE = "rewrite"


@dataclass(frozen=True, order=True)
class Rule:
    """One transition ``(state, letter, top) -> (target, word)``; ``word`` replaces ``top``, top first."""

    state: str
    letter: str
    top: str
    target: str
    word: tuple[str, ...]

    @property
    def action(self) -> Action:
        if not self.word:
            return Action.POP
        if self.word == (self.top,):
            return Action.SKIP
        if len(self.word) >= 2 and self.word[-1] == self.top:
            return Action.PUSH
        return Action.REWRITE

    @property
    def pushed(self) -> tuple[str, ...]:
        return self.word[:-1] if self.action is Action.PUSH else ()

    @property
    def height_change(self) -> int:
        return len(self.word) - 1

    def __str__(self) -> str:
        return format_rule(self)


def format_rule(rule: Rule) -> str:
    letter = rule.letter or "ε"
    word = "".join(rule.word) or "ε"
    return f"({rule.state}, {letter}, {rule.top}) -> ({rule.target}, {word})"


@dataclass(frozen=True, order=True)
class Configuration:
    state: str
    stack: tuple[str, ...] = (BOTTOM,)

    def __post_init__(self) -> None:
        stack = tuple(self.stack)
        object.__setattr__(self, "stack", stack)
        if not stack or stack[-1] != BOTTOM or BOTTOM in stack[:-1]:
            raise ValueError(f"stack of {self.state} must end with a single {BOTTOM}: {stack}")

    @property
    def top(self) -> str:
        return self.stack[0]

    @property
    def height(self) -> int:
        return len(self.stack)

    def __str__(self) -> str:
        return f"({self.state}, {''.join(self.stack)})"


@dataclass(frozen=True)
class PushdownMachine:
    states: frozenset[str]
    input_alphabet: frozenset[str]
    stack_alphabet: frozenset[str]
    initial_state: str
    rules: tuple[Rule, ...]
    deterministic: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "input_alphabet", frozenset(self.input_alphabet))
        object.__setattr__(self, "stack_alphabet", frozenset(self.stack_alphabet))
        object.__setattr__(self, "rules", tuple(sorted(set(self.rules))))
        problems = self.problems()
        if problems:
            raise ValueError("; ".join(problems))

    def problems(self) -> list[str]:
        out: list[str] = []
        if BOTTOM in self.stack_alphabet:
            out.append(f"bottom symbol {BOTTOM} declared in stack alphabet")
        if EPSILON in self.input_alphabet:
            out.append("empty letter declared in input alphabet")
        if self.initial_state not in self.states:
            out.append(f"initial state {self.initial_state} undeclared")
        tops = self.stack_alphabet | {BOTTOM}
        for rule in self.rules:
            if rule.state not in self.states or rule.target not in self.states:
                out.append(f"{rule}: undeclared state")
            if rule.letter != EPSILON and rule.letter not in self.input_alphabet:
                out.append(f"{rule}: undeclared letter {rule.letter}")
            if rule.top not in tops:
                out.append(f"{rule}: undeclared stack symbol {rule.top}")
            if rule.top == BOTTOM:
                if not rule.word or rule.word[-1] != BOTTOM or BOTTOM in rule.word[:-1]:
                    out.append(f"{rule}: bottom must stay exactly once at the end")
            elif BOTTOM in rule.word:
                out.append(f"{rule}: bottom written above the bottom")
            for symbol in rule.word:
                if symbol != BOTTOM and symbol not in self.stack_alphabet:
                    out.append(f"{rule}: undeclared stack symbol {symbol}")
        if self.deterministic:
            out.extend(determinism_violations(self.rules))
        return out

    @cached_property
    def _by_state_top(self) -> dict[tuple[str, str], tuple[Rule, ...]]:
        index: dict[tuple[str, str], list[Rule]] = defaultdict(list)
        for rule in self.rules:
            index[(rule.state, rule.top)].append(rule)
        return {key: tuple(value) for key, value in index.items()}

    def rules_at(self, state: str, top: str) -> tuple[Rule, ...]:
        return self._by_state_top.get((state, top), ())

    @property
    def tops(self) -> tuple[str, ...]:
        """Stack alphabet plus the bottom symbol, bottom last."""
        return tuple(sorted(self.stack_alphabet)) + (BOTTOM,)

    @property
    def initial(self) -> Configuration:
        return Configuration(self.initial_state)


def determinism_violations(rules: Iterable[Rule]) -> list[str]:
    grouped: dict[tuple[str, str], list[Rule]] = defaultdict(list)
    for rule in rules:
        grouped[(rule.state, rule.top)].append(rule)
    out: list[str] = []
    for (state, top), group in sorted(grouped.items()):
        letters = [r.letter for r in group]
        if EPSILON in letters and len(letters) > 1:
            out.append(f"({state}, {top}): ε-rule next to other rules")
            continue
        seen: set[str] = set()
        for rule in group:
            if rule.letter in seen:
                out.append(f"{rule}: second rule for letter {rule.letter or 'ε'}")
            seen.add(rule.letter)
    return out


@dataclass(frozen=True)
class PriorityFunction:
    colors: Mapping[str, int]

    def __post_init__(self) -> None:
        colors = {str(q): int(c) for q, c in sorted(dict(self.colors).items())}
        for state, color in colors.items():
            if color < 0:
                raise ValueError(f"priority of {state} is negative: {color}")
        object.__setattr__(self, "colors", colors)

    def __getitem__(self, state: str) -> int:
        return self.colors[state]

    def __contains__(self, state: object) -> bool:
        return state in self.colors

    def get(self, state: str, default: int = 0) -> int:
        return self.colors.get(state, default)

    @property
    def k(self) -> int:
        return max(self.colors.values(), default=-1) + 1

    def missing(self, states: Iterable[str]) -> list[str]:
        return sorted(q for q in states if q not in self.colors)

    def shifted(self, delta: int) -> "PriorityFunction":
        return PriorityFunction({q: c + delta for q, c in self.colors.items()})


@dataclass(frozen=True)
class VisiblyAlphabet:
    calls: frozenset[str]
    returns: frozenset[str]
    internals: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        for name in ("calls", "returns", "internals"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if (self.calls & self.returns) or (self.calls & self.internals) or (self.returns & self.internals):
            raise ValueError("visibly alphabet classes overlap")

    @property
    def letters(self) -> frozenset[str]:
        return self.calls | self.returns | self.internals

    def classify(self, letter: str) -> str | None:
        if letter in self.calls:
            return "call"
        if letter in self.returns:
            return "return"
        if letter in self.internals:
            return "internal"
        return None


@dataclass(frozen=True)
class FormatDescriptor:
    deterministic: bool = False
    realtime: bool = False
    visibly: VisiblyAlphabet | None = None
    one_counter: bool = False
    blind: bool = False

    def __post_init__(self) -> None:
        if self.blind and not self.one_counter:
            raise ValueError("blind format requires oneCounter")
        if self.visibly is not None and not self.realtime:
            raise ValueError("visibly format requires realtime")

    @classmethod
    def of(cls, *flags: str, visibly: VisiblyAlphabet | None = None) -> "FormatDescriptor":
        """Build from flag names, adding the flags they imply."""
        unknown = [f for f in flags if f not in FORMAT_FLAGS]
        if unknown:
            raise ValueError(f"unknown format flag(s): {', '.join(unknown)}")
        names = set(flags)
        if "visibly" in names and visibly is None:
            raise ValueError("visibly format needs a call/return/internal partition")
        return cls(
            deterministic="deterministic" in names,
            realtime="realtime" in names or "visibly" in names,
            visibly=visibly if "visibly" in names else None,
            one_counter="oneCounter" in names or "blind" in names,
            blind="blind" in names,
        )

    @property
    def flags(self) -> tuple[str, ...]:
        out = []
        if self.deterministic:
            out.append("deterministic")
        if self.realtime:
            out.append("realtime")
        if self.visibly is not None:
            out.append("visibly")
        if self.one_counter:
            out.append("oneCounter")
        if self.blind:
            out.append("blind")
        return tuple(out)


@dataclass(frozen=True)
class LassoRun:
    """``prefix · cycle^ω``; ``closing`` is the configuration after the last cycle step.

    When ``closing`` equals the first cycle configuration the lasso is exact,
    otherwise it pumps: same state and top, higher stack, untouched suffix.
    """

    prefix: tuple[Configuration, ...]
    cycle: tuple[Configuration, ...]
    closing: Configuration | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")
        start = self.cycle[0]
        closing = self.closing or start
        object.__setattr__(self, "closing", closing)
        if closing.state != start.state or closing.top != start.top:
            raise ValueError(f"lasso closes at {closing}, not at the state and top of {start}")
        if closing.height < start.height:
            raise ValueError("lasso cycle lowers the stack")
        below = start.stack[1:]
        if closing.height > start.height or closing != start:
            if closing.stack[len(closing.stack) - len(below):] != below:
                raise ValueError("pumping lasso touches the stack below its start")
            for config in self.cycle:
                if config.height < start.height or config.stack[config.height - len(below):] != below:
                    raise ValueError("pumping lasso cycle dips below its start")
            if closing.height == start.height:
                raise ValueError("lasso cycle returns to a different configuration")

    @property
    def growth(self) -> int:
        assert self.closing is not None
        return self.closing.height - self.cycle[0].height

    @property
    def exact(self) -> bool:
        return self.growth == 0

    def heights(self) -> tuple[list[int], list[int]]:
        return [c.height for c in self.prefix], [c.height for c in self.cycle]

    def _pumped(self, config: Configuration, times: int) -> Configuration:
        if times == 0 or self.growth == 0:
            return config
        assert self.closing is not None
        keep = len(self.cycle[0].stack) - 1
        layer = self.closing.stack[1 : 1 + self.growth]
        upper = config.stack[: config.height - keep]
        lower = self.cycle[0].stack[1:]
        return Configuration(config.state, upper + layer * times + lower)

    def unrolled(self, repetitions: int) -> tuple[Configuration, ...]:
        out = list(self.prefix)
        for rep in range(repetitions):
            out.extend(self._pumped(c, rep) for c in self.cycle)
        return tuple(out)

    def unroll_once(self) -> "LassoRun":
        assert self.closing is not None
        return LassoRun(
            prefix=self.prefix + self.cycle,
            cycle=tuple(self._pumped(c, 1) for c in self.cycle),
            closing=self._pumped(self.closing, 1),
        )


@dataclass(frozen=True)
class FormatVerdict:
    ok: bool
    violations: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok
