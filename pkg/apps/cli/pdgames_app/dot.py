"""Graphviz DOT text for arenas, strategies and trace graphs."""

from __future__ import annotations

from collections import deque
from typing import Iterator

import networkx as nx

from pdgames_arena import GameSpec, StrategyPDA, legal_moves
from pdgames_machine import Player


def _gvquote(s: object) -> str:
    return '"{}"'.format(str(s).replace('"', r"\""))


def _shape(player: Player) -> str:
    # Player 1 positions are boxes, Player 0 positions rounded boxes
    return 'shape="box"' if player is Player.P1 else 'shape="box", style="rounded"'


def arena_dot(game: GameSpec, height_cap: int) -> Iterator[str]:
    if height_cap < 1:
        raise ValueError("height cap must be positive")
    yield f"digraph {_gvquote(game.name)} {{\n"
    start = game.initial
    seen = {start}
    frontier = deque([start])
    edges: list[tuple[object, str, object]] = []
    overflow = 0
    while frontier:
        config = frontier.popleft()
        for letter, nxt in legal_moves(game, config):
            if nxt.height > height_cap:
                overflow += 1
                continue
            edges.append((config, letter, nxt))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    for config in sorted(seen, key=lambda c: (c.state, c.height, c.stack)):
        state = config.state
        label = f"{config}\\ncol {game.col[state]}"
        yield f"  {_gvquote(config)} [{_shape(game.owner[state])}, label={_gvquote(label)}];\n"
    for source, letter, target in edges:
        yield f"  {_gvquote(source)} -> {_gvquote(target)} [label={_gvquote(letter or '~')}];\n"
    if overflow:
        yield f"  // cap overflow: {overflow} moves exceed height {height_cap}\n"
    yield "}\n"


def strategy_dot(strategy: StrategyPDA) -> Iterator[str]:
    yield f"digraph {_gvquote(strategy.name)} {{\n"
    for state in sorted(strategy.states):
        shape = "doublecircle" if state == strategy.initial_state else "circle"
        yield f"  {_gvquote(state)} [shape={_gvquote(shape)}];\n"
    for rule in strategy.rules:
        word = " ".join(rule.word)
        label = f"{rule.letter or '~'}/{rule.output or '~'} {rule.top}→{word or 'ε'}"
        yield f"  {_gvquote(rule.state)} -> {_gvquote(rule.target)} [label={_gvquote(label)}];\n"
    yield "}\n"


def trace_dot(graph: nx.DiGraph, name: str = "traces") -> Iterator[str]:
    yield f"digraph {_gvquote(name)} {{\n"
    for vertex, priority in sorted(graph.nodes(data="priority"), key=str):
        p, state, _ = vertex
        style = ', color="red"' if priority % 2 else ""
        yield f"  {_gvquote(vertex)} [label={_gvquote(f'{p}:{state} ({priority})')}{style}];\n"
    for source, target in sorted(graph.edges(), key=str):
        yield f"  {_gvquote(source)} -> {_gvquote(target)};\n"
    yield "}\n"


def export_dot(obj: GameSpec | StrategyPDA | nx.DiGraph, height_cap: int = 3) -> str:
    """DOT text for a game arena (configurations up to ``height_cap``), a strategy or a trace graph."""
    if isinstance(obj, GameSpec):
        return "".join(arena_dot(obj, height_cap))
    if isinstance(obj, StrategyPDA):
        return "".join(strategy_dot(obj))
    if isinstance(obj, nx.DiGraph):
        return "".join(trace_dot(obj))
    raise TypeError(f"cannot export {type(obj).__name__} to DOT")
