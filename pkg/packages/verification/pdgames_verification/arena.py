"""Explicit finite arenas of bounded-height configurations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable

import networkx as nx

from pdgames_arena import GameSpec, legal_moves
from pdgames_machine import Configuration, Player

SINK = {Player.P0: "⊤0", Player.P1: "⊤1"}


@dataclass(frozen=True)
class FiniteArena:
    """Vertices are configurations plus two sinks; ``SINK[p]`` is won by ``p``."""

    graph: nx.DiGraph
    initial: Configuration

    def owner(self, vertex: Hashable) -> Player:
        return self.graph.nodes[vertex]["owner"]

    def priority(self, vertex: Hashable) -> int:
        return self.graph.nodes[vertex]["priority"]

    def __len__(self) -> int:
        return self.graph.number_of_nodes()


def build_arena(game: GameSpec, height_cap: int) -> FiniteArena:
    """All configurations reachable from the initial one; ValueError if one exceeds the cap."""
    if height_cap < 1:
        raise ValueError("height cap must be positive")
    graph = nx.DiGraph()
    for player, sink in SINK.items():
        graph.add_node(sink, owner=player, priority=player.index)
        graph.add_edge(sink, sink)

    start = game.initial
    graph.add_node(start, owner=game.owner[start.state], priority=game.col[start.state])
    frontier = deque([start])
    while frontier:
        config = frontier.popleft()
        moves = legal_moves(game, config)
        if not moves:
            graph.add_edge(config, SINK[game.owner[config.state].opponent])
            continue
        for _, nxt in moves:
            if nxt.height > height_cap:
                raise ValueError(f"arena not closed under cap {height_cap}: {config} reaches {nxt}")
            if nxt not in graph:
                graph.add_node(nxt, owner=game.owner[nxt.state], priority=game.col[nxt.state])
                frontier.append(nxt)
            graph.add_edge(config, nxt)
    return FiniteArena(graph, start)
