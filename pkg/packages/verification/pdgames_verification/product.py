"""Composition of a strategy with its game into a game where only Player 1 chooses.

Product states carry the game state, the strategy state and the strategy's
current top symbol. Each game level is stored as ``B&+u`` when the strategy
pushed along with it (``u`` is the strategy symbol to restore when it is
popped) or ``B&-`` when the strategy did not. Any combination of moves whose
stack effects cannot be paired leads to a sink losing for the strategy.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from pdgames_arena import GameSpec, StrategyPDA, StrategyRule, swap_roles
from pdgames_core import get_logger
from pdgames_machine import BOTTOM, EPSILON, FormatDescriptor, Player, PriorityFunction, PushdownMachine, Rule

logger = get_logger("verification")

Level = tuple[str, str, str]  # game symbol, "+" or "-", saved strategy symbol
Position = tuple[str, str, str]  # game state, strategy state, strategy top
Frame = tuple[Position, str]  # where a stack level became top, and its symbol then
Step = tuple[Position, tuple[str, ...]]
SINK = "lose"


@dataclass(frozen=True)
class ProductGame:
    game: GameSpec
    desync: tuple[str, ...] = field(default_factory=tuple)


class _Builder:
    def __init__(self, strategy: StrategyPDA, game: GameSpec) -> None:
        self.strategy = strategy
        self.game = game
        self.positions: dict[Position, str] = {}
        self.levels: dict[str, Level] = {BOTTOM: (BOTTOM, "", "")}
        self.level_names: dict[Level, str] = {(BOTTOM, "", ""): BOTTOM}
        self.rules: list[Rule] = []
        self.desync: list[str] = []
        self.sink = SINK
        while self.sink in game.machine.states:
            self.sink += "'"

    def position(self, pos: Position) -> str:
        if pos not in self.positions:
            q, s, t = pos
            self.positions[pos] = f"{q}&{s}&{'_' if t == BOTTOM else t}"
        return self.positions[pos]

    def level(self, level: Level) -> str:
        if level not in self.level_names:
            symbol, flag, saved = level
            name = f"{symbol}&{flag}{'_' if saved == BOTTOM else saved}"
            self.level_names[level] = name
            self.levels[name] = level
        return self.level_names[level]

    def _lose(self, source: str, letter: str, top: str, why: str) -> None:
        self.rules.append(Rule(source, letter, top, self.sink, (top,)))
        if why:
            self.desync.append(why)

    def combine(self, pos: Position, top: str, rule: Rule, srule: StrategyRule) -> tuple[Position, tuple[str, ...]] | None:
        """Successor position and product word, or None when the stack effects do not pair up."""
        game_symbol, flag, saved = self.levels[top]
        v = srule.word
        if not rule.word:
            if flag == "+" and not v:
                return (rule.target, srule.target, saved), ()
            if flag == "-" and len(v) == 1:
                return (rule.target, srule.target, v[0]), ()
            return None
        if not v:
            return None
        written = rule.word
        base = self.level((written[-1], flag, saved)) if game_symbol != BOTTOM else BOTTOM
        new = written[:-1]
        marks, y = v[:-1], v[-1]
        if not marks:
            upper = tuple(self.level((c, "-", "")) for c in new)
            return (rule.target, srule.target, y), upper + (base,)
        if len(marks) != len(new):
            return None
        beneath = marks[1:] + (y,)
        upper = tuple(self.level((c, "+", b)) for c, b in zip(new, beneath))
        return (rule.target, srule.target, marks[0]), upper + (base,)

    def expand(self, pos: Position, top: str) -> list[Step]:
        q, s, t = pos
        source = self.position(pos)
        game_symbol = self.levels[top][0]
        enabled = sorted(self.game.machine.rules_at(q, game_symbol))
        own = self.game.owner[q] is Player.P0
        if not enabled:
            if own:
                self._lose(source, EPSILON, top, "")
            return []
        options = self.strategy.rules_at(s, t)
        pairs: list[tuple[Rule, StrategyRule | None]] = []
        if own:
            srule = options.get(EPSILON)
            if srule is None:
                self._lose(source, EPSILON, top, "")
                return []
            chosen = [r for r in enabled if r.letter == srule.output]
            if not chosen:
                self._lose(source, EPSILON, top, "")
                return []
            pairs.append((chosen[0], srule))
        else:
            for rule in enabled:
                srule = options.get(rule.letter)
                pairs.append((rule, srule if srule is not None and not srule.output else None))

        out: list[Step] = []
        for rule, srule in pairs:
            if srule is None:
                self._lose(source, rule.letter, top, "")
                continue
            combined = self.combine(pos, top, rule, srule)
            if combined is None:
                why = f"{rule} with strategy {srule.as_rule()} at top {top}"
                logger.warning("desynchronised stack motion: %s", why, extra={"event": "product_desync"})
                self._lose(source, rule.letter, top, why)
                continue
            nxt, word = combined
            self.rules.append(Rule(source, rule.letter, top, self.position(nxt), word))
            out.append((nxt, word))
        return out


def _explore(builder: _Builder, start: Position) -> None:
    """Expand exactly the (position, top) pairs some play of the product reaches.

    Heads are collected per frame: a stack level together with the position at
    which it became top. Contexts record what lies beneath a frame, exits the
    positions reached when its level is popped.
    """
    steps: dict[tuple[Position, str], list[Step]] = {}
    heads: dict[Frame, set[tuple[Position, str]]] = defaultdict(set)
    contexts: dict[Frame, set[tuple[Frame, tuple[str, ...]]]] = defaultdict(set)
    exits: dict[Frame, set[Position]] = defaultdict(set)
    work: list[tuple[Frame, Position, str]] = []

    def reach(frame: Frame, pos: Position, top: str) -> None:
        if (pos, top) not in heads[frame]:
            heads[frame].add((pos, top))
            work.append((frame, pos, top))

    def resume(context: tuple[Frame, tuple[str, ...]], pos: Position) -> None:
        caller, pending = context
        if len(pending) == 1:
            reach(caller, pos, pending[0])
        else:
            enter((pos, pending[0]), (caller, pending[1:]))

    def enter(frame: Frame, context: tuple[Frame, tuple[str, ...]]) -> None:
        if context in contexts[frame]:
            return
        contexts[frame].add(context)
        reach(frame, *frame)
        for pos in list(exits[frame]):
            resume(context, pos)

    reach((start, BOTTOM), start, BOTTOM)
    while work:
        frame, pos, top = work.pop()
        if (pos, top) not in steps:
            steps[(pos, top)] = builder.expand(pos, top)
        for nxt, word in steps[(pos, top)]:
            if not word:
                if nxt not in exits[frame]:
                    exits[frame].add(nxt)
                    for context in list(contexts[frame]):
                        resume(context, nxt)
            elif len(word) == 1:
                reach(frame, nxt, word[0])
            else:
                enter((nxt, word[0]), (frame, word[1:]))
    logger.debug("product reaches %d heads", len(steps), extra={"event": "product_explored"})


def compose_product(strategy: StrategyPDA, game: GameSpec) -> ProductGame:
    """Game in which only Player 1 chooses; Player 0 wins it iff ``strategy`` wins ``game``."""
    if strategy.player is Player.P1:
        game = swap_roles(game)
    builder = _Builder(strategy, game)
    start: Position = (game.machine.initial_state, strategy.initial_state, BOTTOM)
    builder.position(start)
    _explore(builder, start)

    sink = builder.sink
    tops = list(builder.levels)
    rules = builder.rules + [Rule(sink, EPSILON, t, sink, (t,)) for t in tops]
    states = frozenset(builder.positions.values()) | {sink}
    colors = {name: game.col[pos[0]] for pos, name in builder.positions.items()}
    colors[sink] = 1
    machine = PushdownMachine(
        states=states,
        input_alphabet=game.machine.input_alphabet,
        stack_alphabet=frozenset(t for t in tops if t != BOTTOM),
        initial_state=builder.position(start),
        rules=tuple(rules),
        deterministic=True,
    )
    product = GameSpec(
        machine=machine,
        owner={q: Player.P1 for q in states},
        col=PriorityFunction(colors),
        condition=game.condition,
        name=f"{strategy.name}*{game.name}",
        fmt=FormatDescriptor(deterministic=True),
    )
    return ProductGame(product, tuple(builder.desync))
