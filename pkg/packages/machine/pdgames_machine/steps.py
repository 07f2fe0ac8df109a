"""Steps positions of lasso-shaped runs and lasso evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .models import Condition, LassoRun, Player, PriorityFunction


@dataclass(frozen=True)
class StepsPattern:
    """Positions ``n`` with ``h(m) >= h(n)`` for all later ``m``.

    ``prefix`` holds absolute positions below ``prefix_length``; the periodic part
    holds cycle offsets, repeated every ``period`` positions from ``prefix_length`` on.
    """

    prefix: frozenset[int]
    periodic: frozenset[int]
    period: int
    prefix_length: int

    def __contains__(self, position: object) -> bool:
        if not isinstance(position, int) or position < 0:
            return False
        if position < self.prefix_length:
            return position in self.prefix
        return (position - self.prefix_length) % self.period in self.periodic

    def positions(self, length: int) -> list[int]:
        return [n for n in range(length) if n in self]


def steps_positions(prefix: Sequence[int], cycle: Sequence[int], delta: int = 0) -> StepsPattern:
    """Steps positions of the unrolling where each cycle pass raises heights by ``delta``."""
    if not cycle:
        raise ValueError("cycle must be nonempty")
    if delta < 0:
        raise ValueError(f"cycle lowers the stack by {-delta}; no legal lasso")
    lowest = min(cycle)
    periodic = frozenset(
        i
        for i, h in enumerate(cycle)
        if h <= min(cycle[i + 1 :], default=h) and h <= lowest + delta
    )
    kept = frozenset(
        n
        for n, h in enumerate(prefix)
        if h <= min(prefix[n + 1 :], default=h) and h <= lowest
    )
    return StepsPattern(kept, periodic, len(cycle), len(prefix))


def steps_bruteforce(heights: Sequence[int]) -> list[int]:
    """Positions of a finite height sequence never undercut later in that sequence."""
    values = np.asarray(heights, dtype=np.int64)
    if values.size == 0:
        return []
    suffix_min = np.minimum.accumulate(values[::-1])[::-1]
    return [int(n) for n in np.flatnonzero(values <= suffix_min)]


def unrolled_heights(prefix: Sequence[int], cycle: Sequence[int], delta: int, length: int) -> list[int]:
    out = list(prefix[:length])
    rep = 0
    while len(out) < length:
        out.extend(h + rep * delta for h in cycle)
        rep += 1
    return out[:length]


@dataclass(frozen=True)
class LassoVerdict:
    winner: Player
    priority: int
    positions: tuple[int, ...]


def lasso_verdict(run: LassoRun, col: PriorityFunction, kind: Condition) -> LassoVerdict:
    if kind is Condition.PARITY:
        offsets = tuple(range(len(run.cycle)))
    else:
        prefix, cycle = run.heights()
        offsets = tuple(sorted(steps_positions(prefix, cycle, run.growth).periodic))
    priority = min(col[run.cycle[i].state] for i in offsets)
    return LassoVerdict(Player.of_priority(priority), priority, offsets)


def evaluate_lasso(run: LassoRun, col: PriorityFunction, kind: Condition) -> Player:
    return lasso_verdict(run, col, Condition(kind)).winner
