"""Recursive parity game solving on finite arenas (least priority seen infinitely often)."""

from __future__ import annotations

from typing import Hashable, Iterable

import networkx as nx

from pdgames_arena import GameSpec
from pdgames_machine import Condition, Player

from .arena import FiniteArena, build_arena

Region = frozenset[Hashable]


def attractor(graph: nx.DiGraph, target: Iterable[Hashable], player: Player) -> set[Hashable]:
    """Vertices from which ``player`` forces a visit to ``target`` inside ``graph``."""
    attr = set(target)
    pending = {v: graph.out_degree(v) for v in graph}
    frontier = list(attr)
    while frontier:
        v = frontier.pop()
        for u in graph.predecessors(v):
            if u in attr:
                continue
            if graph.nodes[u]["owner"] is player:
                attr.add(u)
                frontier.append(u)
                continue
            pending[u] -= 1
            if pending[u] == 0:
                attr.add(u)
                frontier.append(u)
    return attr


def zielonka(graph: nx.DiGraph) -> tuple[Region, Region]:
    """Winning regions ``(W0, W1)``; every vertex needs a successor inside ``graph``."""
    if graph.number_of_nodes() == 0:
        return frozenset(), frozenset()
    d = min(p for _, p in graph.nodes(data="priority"))
    player = Player.of_priority(d)
    opponent = player.opponent
    top = [v for v, p in graph.nodes(data="priority") if p == d]
    a = attractor(graph, top, player)
    sub = zielonka(graph.subgraph(set(graph) - a).copy())
    if not sub[opponent.index]:
        won = frozenset(graph)
        return (won, frozenset()) if player is Player.P0 else (frozenset(), won)
    b = attractor(graph, sub[opponent.index], opponent)
    rest = zielonka(graph.subgraph(set(graph) - b).copy())
    regions: list[Region] = [frozenset(), frozenset()]
    regions[player.index] = rest[player.index]
    regions[opponent.index] = rest[opponent.index] | frozenset(b)
    return regions[0], regions[1]


def solve_arena(arena: FiniteArena) -> tuple[Region, Region]:
    return zielonka(arena.graph)


def finite_arena_oracle(game: GameSpec, height_cap: int) -> Player:
    """Winner from the initial configuration, for parity games closed under ``height_cap``."""
    if game.condition is Condition.STAIR:
        raise ValueError("stair-parity games are not supported by the finite-arena oracle")
    arena = build_arena(game, height_cap)
    w0, _ = solve_arena(arena)
    return Player.P0 if arena.initial in w0 else Player.P1
