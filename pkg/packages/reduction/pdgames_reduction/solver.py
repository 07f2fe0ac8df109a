"""Deciding the winner by interleaved candidate search for both players."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from pdgames_arena import GameNormalization, GameSpec, normalize_game, swap_roles
from pdgames_core import ResourceSampler, get_logger
from pdgames_machine import FormatDescriptor, Player, check_format

from .automaton import AlternatingTreeAutomaton, build_automaton
from .candidate import RegularCandidate
from .consistency import check_consistency
from .search import CandidateSearch, SearchCaps
from .traces import check_traces

logger = get_logger("reduction")

UNDECIDABLE = (
    "nondeterministic arena: deciding the winner of games on nondeterministic "
    "pushdown machines is undecidable"
)
DETERMINED = (
    "no witness within the caps; the game is determined, so one player wins "
    "with a pushdown strategy that needs larger caps"
)


class SolveStatus(str, Enum):
    SOLVED_PLAYER0 = "SolvedPlayer0"
    SOLVED_PLAYER1 = "SolvedPlayer1"
    UNKNOWN_AT_CAP = "UnknownAtCap"


@dataclass(frozen=True)
class Witness:
    """A winning candidate for ``player`` over ``oriented.game``.

    For Player 1 the oriented game is the role-swapped game, in which Player 1's
    positions belong to the searching side.
    """

    player: Player
    candidate: RegularCandidate
    automaton: AlternatingTreeAutomaton
    oriented: GameNormalization

    @property
    def game(self) -> GameSpec:
        return self.oriented.game


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    witness: Witness | None
    caps: SearchCaps
    statistics: dict = field(default_factory=dict)
    message: str = ""

    @property
    def winner(self) -> Player | None:
        if self.status is SolveStatus.SOLVED_PLAYER0:
            return Player.P0
        if self.status is SolveStatus.SOLVED_PLAYER1:
            return Player.P1
        return None


def is_witness(candidate: RegularCandidate, automaton: AlternatingTreeAutomaton) -> bool:
    return check_consistency(candidate, automaton).ok and check_traces(candidate, automaton).ok


@dataclass
class _Orientation:
    player: Player
    oriented: GameNormalization
    automaton: AlternatingTreeAutomaton
    search: CandidateSearch
    checked: int = 0


def _orient(game: GameSpec, player: Player, caps: SearchCaps, prune: bool) -> _Orientation:
    source = game if player is Player.P0 else swap_roles(game)
    oriented = normalize_game(source)
    automaton = build_automaton(oriented.game)
    return _Orientation(player, oriented, automaton, CandidateSearch(automaton, caps, prune=prune))


def solve(
    game: GameSpec,
    caps: SearchCaps | None = None,
    *,
    accept: Callable[[Witness], bool] | None = None,
    prune: bool = True,
) -> SolveResult:
    """Search both players' regular strategies round by round; the first witness wins.

    ``accept`` filters Player 0 witnesses (used for format-constrained synthesis).
    """
    caps = caps or SearchCaps()
    verdict = check_format(game.machine, FormatDescriptor(deterministic=True))
    if not verdict.ok:
        raise ValueError(UNDECIDABLE + ": " + "; ".join(verdict.violations))

    sampler = ResourceSampler()
    started = time.perf_counter()
    sides = [_orient(game, Player.P0, caps, prune), _orient(game, Player.P1, caps, prune)]

    found: Witness | None = None
    for classes in range(1, caps.max_classes + 1):
        for side in sides:
            for candidate in side.search.round(classes):
                side.checked += 1
                if not is_witness(candidate, side.automaton):
                    continue
                witness = Witness(side.player, candidate, side.automaton, side.oriented)
                if side.player is Player.P0 and accept is not None and not accept(witness):
                    continue
                found = witness
                break
            if found is not None:
                break
        sample = sampler.sample()
        if sample.warning:
            logger.warning("resource warning %s", sample.warning, extra={"event": sample.warning})
        if found is not None:
            break

    sample = sampler.sample()
    statistics = {
        "elapsed_s": round(time.perf_counter() - started, 6),
        "nodes": {side.player.value: side.search.nodes for side in sides},
        "candidates": {side.player.value: side.checked for side in sides},
        "budget_hit": any(side.search.exhausted for side in sides),
        "peak_rss_mb": round(sampler.peak_rss_mb, 3),
        "cpu_percent": sample.cpu_percent,
    }
    if found is None:
        status, message = SolveStatus.UNKNOWN_AT_CAP, DETERMINED
    elif found.player is Player.P0:
        status, message = SolveStatus.SOLVED_PLAYER0, "Player 0 wins"
    else:
        status, message = SolveStatus.SOLVED_PLAYER1, "Player 1 wins"
    logger.info(
        "solved %s: %s after %.3fs",
        game.name,
        status.value,
        statistics["elapsed_s"],
        extra={"event": "solve_finished", "game": game.name, "status": status},
    )
    return SolveResult(status, found, caps, statistics, message)
