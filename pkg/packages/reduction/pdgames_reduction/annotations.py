"""Least annotations: summaries of finite detours below each class."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping

from pdgames_machine import Condition

from .candidate import AnnotationLabel, ClassAutomaton, Move, StairAnnotation


def _close_weighted(entries: Iterable[tuple[str, int, str]]) -> set[tuple[str, int, str]]:
    """Close under ``(a, m, b), (b, m2, c) -> (a, min(m, m2), c)``."""
    result = set(entries)
    by_source: dict[str, set[tuple[str, int, str]]] = defaultdict(set)
    by_target: dict[str, set[tuple[str, int, str]]] = defaultdict(set)
    for e in result:
        by_source[e[0]].add(e)
        by_target[e[2]].add(e)
    frontier = list(result)
    while frontier:
        a, m, b = frontier.pop()
        new = [(a, min(m, m2), c) for (_, m2, c) in tuple(by_source[b])]
        new += [(x, min(m0, m), b) for (x, m0, _) in tuple(by_target[a])]
        for e in new:
            if e not in result:
                result.add(e)
                by_source[e[0]].add(e)
                by_target[e[2]].add(e)
                frontier.append(e)
    return result


def _close_pairs(pairs: Iterable[tuple[str, str]]) -> set[tuple[str, str]]:
    result = set(pairs)
    frontier = list(result)
    while frontier:
        a, b = frontier.pop()
        new = [(a, c) for (x, c) in tuple(result) if x == b] + [(x, b) for (x, y) in tuple(result) if y == a]
        for e in new:
            if e not in result:
                result.add(e)
                frontier.append(e)
    return result


def _structure(
    classes: ClassAutomaton, moves: Mapping[int, Iterable[Move]]
) -> tuple[dict[int, list[Move]], dict[int, list[tuple[Move, int]]], dict[int, dict[str, list[str]]]]:
    stays: dict[int, list[Move]] = {}
    downs: dict[int, list[tuple[Move, int]]] = {}
    ups: dict[int, dict[str, list[str]]] = {}
    for p in classes.classes:
        entries = sorted(moves.get(p, ()))
        stays[p] = [m for m in entries if m.is_stay]
        downs[p] = [
            (m, child)
            for m in entries
            if m.is_down and (child := classes.successor(p, m.direction.symbol)) is not None
        ]
        up: dict[str, list[str]] = defaultdict(list)
        for m in entries:
            if m.is_up:
                up[m.source].append(m.target)
        ups[p] = dict(up)
    return stays, downs, ups


def _least_parity(
    classes: ClassAutomaton, moves: Mapping[int, Iterable[Move]], col: Mapping[str, int]
) -> dict[int, frozenset]:
    stays, downs, ups = _structure(classes, moves)
    annotation: dict[int, set[tuple[str, int, str]]] = {p: set() for p in classes.classes}
    changed = True
    while changed:
        changed = False
        for p in classes.classes:
            entries = set(annotation[p])
            for m in stays[p]:
                entries.add((m.source, col[m.target], m.target))
            for m, child in downs[p]:
                c1 = col[m.target]
                returns = ups[child]
                for q2 in returns.get(m.target, ()):
                    entries.add((m.source, min(c1, col[q2]), q2))
                for q1, low, mid in annotation[child]:
                    if q1 != m.target:
                        continue
                    for q2 in returns.get(mid, ()):
                        entries.add((m.source, min(c1, low, col[q2]), q2))
            entries = _close_weighted(entries)
            if entries != annotation[p]:
                annotation[p] = entries
                changed = True
    return {p: frozenset(v) for p, v in annotation.items()}


def _least_stair(
    classes: ClassAutomaton, moves: Mapping[int, Iterable[Move]], col: Mapping[str, int]
) -> dict[int, StairAnnotation]:
    stays, downs, ups = _structure(classes, moves)
    reach: dict[int, set[tuple[str, str]]] = {p: set() for p in classes.classes}
    once: dict[int, set[tuple[str, str]]] = {p: set() for p in classes.classes}
    changed = True
    while changed:
        changed = False
        for p in classes.classes:
            base: set[tuple[str, str]] = {(m.source, m.target) for m in stays[p]}
            for m, child in downs[p]:
                returns = ups[child]
                for q2 in returns.get(m.target, ()):
                    base.add((m.source, q2))
                for q1, mid in reach[child]:
                    if q1 == m.target:
                        for q2 in returns.get(mid, ()):
                            base.add((m.source, q2))
            new_once = once[p] | base
            new_reach = _close_pairs(reach[p] | base)
            if new_once != once[p] or new_reach != reach[p]:
                once[p], reach[p] = new_once, new_reach
                changed = True

    out: dict[int, StairAnnotation] = {}
    for p in classes.classes:
        minima = {(q, col[q2], q2) for q, q2 in once[p]}
        frontier = list(minima)
        while frontier:
            q, low, q1 = frontier.pop()
            for x, q2 in once[p]:
                if x != q1:
                    continue
                e = (q, min(low, col[q2]), q2)
                if e not in minima:
                    minima.add(e)
                    frontier.append(e)
        out[p] = StairAnnotation(frozenset(reach[p]), frozenset(once[p]), frozenset(minima))
    return out


def least_annotation(
    classes: ClassAutomaton,
    moves: Mapping[int, Iterable[Move]],
    col: Mapping[str, int],
    condition: Condition = Condition.PARITY,
) -> dict[int, AnnotationLabel]:
    """Least per-class annotation closed under the detour conditions for the given strategy labels."""
    if Condition(condition) is Condition.STAIR:
        return dict(_least_stair(classes, moves, col))
    return dict(_least_parity(classes, moves, col))
