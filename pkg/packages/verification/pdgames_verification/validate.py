"""Bounded exhaustive validation of a strategy against every adversary behaviour."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from pdgames_arena import (
    GameSpec,
    PlayRecord,
    PlayStatus,
    StrategyPDA,
    StrategyRunner,
    StrategyStuckError,
    find_lasso,
    lasso_key,
    legal_moves,
)
from pdgames_core import get_logger
from pdgames_machine import Configuration, LassoRun, evaluate_lasso

logger = get_logger("verification")


@dataclass(frozen=True)
class ValidationReport:
    clean: bool
    counterexample: PlayRecord | None
    explored: int
    unresolved: int

    def to_dict(self) -> dict:
        return {
            "clean": self.clean,
            "explored": self.explored,
            "unresolved": self.unresolved,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
        }


class _Found(Exception):
    def __init__(self, record: PlayRecord) -> None:
        self.record = record


class _Explorer:
    def __init__(self, strategy: StrategyPDA, game: GameSpec, depth: int, height: int) -> None:
        self.strategy = strategy
        self.game = game
        self.player = strategy.player
        self.depth = depth
        self.height = height
        self.explored = 0
        self.unresolved = 0

    def _fail(self, configs, letters, status, lasso=None, note="") -> None:
        record = PlayRecord(
            tuple(configs),
            tuple(letters),
            status,
            lasso,
            self.player.opponent,
            self.player if status is PlayStatus.DEAD else None,
            (note,) if note else (),
        )
        raise _Found(record)

    def walk(
        self,
        runner: StrategyRunner,
        configs: list[Configuration],
        letters: list[str],
        snaps: list[tuple],
        seen: dict[tuple, list[int]],
    ) -> None:
        self.explored += 1
        now = len(configs) - 1
        config = configs[now]
        key = lasso_key(config, snaps[now])
        j = find_lasso(configs, snaps, seen[key])
        if j is not None:
            run = LassoRun(tuple(configs[:j]), tuple(configs[j:now]), config)
            if evaluate_lasso(run, self.game.col, self.game.condition) is not self.player:
                self._fail(configs, letters, PlayStatus.LASSO, run)
            if run.exact and snaps[j] == snaps[now]:
                # the subtree repeats the one at j
                return
        if now >= self.depth or config.height > self.height:
            self.unresolved += 1
            return

        moves = legal_moves(self.game, config)
        owner = self.game.owner[config.state]
        if not moves:
            if owner is self.player:
                self._fail(configs, letters, PlayStatus.DEAD, note="no legal move")
            return

        seen[key].append(now)
        try:
            if owner is self.player:
                branch = runner.fork()
                try:
                    letter = branch.respond()
                except StrategyStuckError as exc:
                    self._fail(configs, letters, PlayStatus.DEAD, note=str(exc))
                chosen = [(a, c) for a, c in moves if a == letter]
                if not chosen:
                    self._fail(configs, letters, PlayStatus.DEAD, note=f"strategy plays illegal {letter or '~'}")
                self._descend(branch, configs, letters, snaps, seen, chosen[0])
            else:
                for move in moves:
                    branch = runner.fork()
                    try:
                        branch.observe(move[0])
                    except StrategyStuckError as exc:
                        self._fail(configs + [move[1]], letters + [move[0]], PlayStatus.DEAD, note=str(exc))
                    self._descend(branch, configs, letters, snaps, seen, move)
        finally:
            seen[key].pop()

    def _descend(self, runner, configs, letters, snaps, seen, move) -> None:
        letter, nxt = move
        configs.append(nxt)
        letters.append(letter)
        snaps.append(runner.snapshot())
        try:
            self.walk(runner, configs, letters, snaps, seen)
        finally:
            configs.pop()
            letters.pop()
            snaps.pop()


def validate_strategy(
    strategy: StrategyPDA,
    game: GameSpec,
    depth: int = 24,
    height: int = 12,
) -> ValidationReport:
    """Explore all adversary choices up to ``depth`` moves and stack ``height``.

    Moves are tried in sorted order, so the reported counterexample is the
    lexicographically least losing play.
    """
    if depth < 1 or height < 1:
        raise ValueError("validation bounds must be positive")
    explorer = _Explorer(strategy, game, depth, height)
    runner = StrategyRunner(strategy)
    try:
        explorer.walk(runner, [game.initial], [], [runner.snapshot()], defaultdict(list))
    except _Found as found:
        record = found.record
        logger.info(
            "counterexample after %d moves: %s",
            len(record.letters),
            record.status.value,
            extra={"event": "counterexample_found"},
        )
        return ValidationReport(False, record, explorer.explored, explorer.unresolved)
    return ValidationReport(True, None, explorer.explored, explorer.unresolved)
