"""Bounded simulation of plays with lasso detection."""

from __future__ import annotations

from collections import defaultdict

from pdgames_core import get_logger
from pdgames_machine import Configuration, LassoRun, Player, evaluate_lasso

from .agents import Agent, StrategyStuckError
from .models import GameSpec, PlayRecord, PlayStatus
from .moves import legal_moves

logger = get_logger("arena")

Snapshot = tuple[str, tuple[str, ...]] | None


def _keeps_floor(stacks: list[tuple[str, ...]], start: int, end: int) -> bool:
    """Stack heights in ``stacks[start..end]`` never drop below the one at ``start``."""
    floor = len(stacks[start])
    return all(len(s) >= floor for s in stacks[start : end + 1])


def find_lasso(
    configs: list[Configuration],
    snapshots: list[Snapshot],
    candidates: list[int],
) -> int | None:
    """Latest earlier position closing a lasso at the last position, if any."""
    now = len(configs) - 1
    game_stacks = [c.stack for c in configs]
    for j in reversed(candidates):
        if not _keeps_floor(game_stacks, j, now):
            continue
        a, b = snapshots[j], snapshots[now]
        if a is not None and b is not None:
            stacks = [s[1] for s in snapshots]  # type: ignore[index]
            if not _keeps_floor(stacks, j, now):
                continue
        try:
            LassoRun(tuple(configs[:j]), tuple(configs[j:now]), configs[now])
        except ValueError:
            continue
        return j
    return None


def lasso_key(config: Configuration, snap: Snapshot) -> tuple:
    if snap is None:
        return (config.state, config.top)
    state, stack = snap
    return (config.state, config.top, state, stack[0] if stack else None)


def simulate(
    game: GameSpec,
    protagonist: Agent,
    adversary: Agent,
    *,
    max_steps: int = 200,
    max_height: int = 32,
    protagonist_player: Player | None = None,
) -> PlayRecord:
    if max_steps < 1 or max_height < 1:
        raise ValueError("simulation bounds must be positive")
    player = protagonist_player or protagonist.player or Player.P0
    config = game.initial
    configs = [config]
    letters: list[str] = []
    snaps: list[Snapshot] = [protagonist.snapshot()]
    seen: dict[tuple, list[int]] = defaultdict(list)

    for _ in range(max_steps):
        now = len(configs) - 1
        key = lasso_key(config, snaps[now])
        j = find_lasso(configs, snaps, seen[key])
        if j is not None:
            run = LassoRun(tuple(configs[:j]), tuple(configs[j:now]), config)
            winner = evaluate_lasso(run, game.col, game.condition)
            logger.info(
                "lasso after %d steps, cycle %d, winner %s",
                now,
                len(run.cycle),
                winner.value,
                extra={"event": "lasso_detected"},
            )
            return PlayRecord(tuple(configs), tuple(letters), PlayStatus.LASSO, run, winner)
        seen[key].append(now)

        moves = legal_moves(game, config)
        owner = game.owner[config.state]
        if not moves:
            return PlayRecord(tuple(configs), tuple(letters), PlayStatus.DEAD, None, owner.opponent, owner)
        agent = protagonist if owner is player else adversary
        try:
            index = agent.choose(game, config, moves)
        except StrategyStuckError as exc:
            return PlayRecord(
                tuple(configs), tuple(letters), PlayStatus.DEAD, None, owner.opponent, owner, (str(exc),)
            )
        letter, config = moves[index]
        if owner is not player:
            try:
                protagonist.observe(letter)
            except StrategyStuckError as exc:
                return PlayRecord(
                    tuple(configs), tuple(letters), PlayStatus.DEAD, None, player.opponent, player, (str(exc),)
                )
        letters.append(letter)
        configs.append(config)
        snaps.append(protagonist.snapshot())
        if config.height > max_height:
            return PlayRecord(tuple(configs), tuple(letters), notes=("height bound reached",))

    return PlayRecord(tuple(configs), tuple(letters), notes=("step bound reached",))
