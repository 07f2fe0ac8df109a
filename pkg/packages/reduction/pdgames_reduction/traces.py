"""Trace graph of a candidate and the universal parity check over its cycles."""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .automaton import AlternatingTreeAutomaton
from .candidate import RegularCandidate, detour_entries

Vertex = tuple[int, str, int]


def trace_graph(candidate: RegularCandidate, automaton: AlternatingTreeAutomaton) -> nx.DiGraph:
    """Vertices ``(class, state, priority)`` reachable from the root; edges follow pushes and detours."""
    graph = nx.DiGraph()
    start: Vertex = (0, automaton.root, automaton.col(automaton.root))
    graph.add_node(start, priority=start[2])
    frontier = [start]
    while frontier:
        vertex = frontier.pop()
        p, q, _ = vertex
        successors: list[Vertex] = []
        for move in candidate.moves_from(p, q):
            if not move.is_down:
                continue
            child = candidate.classes.successor(p, move.direction.symbol)
            if child is not None:
                successors.append((child, move.target, automaton.col(move.target)))
        for q1, low, q2 in sorted(detour_entries(candidate.annotation[p])):
            if q1 == q:
                successors.append((p, q2, low))
        for nxt in successors:
            if nxt not in graph:
                graph.add_node(nxt, priority=nxt[2])
                frontier.append(nxt)
            graph.add_edge(vertex, nxt)
    return graph


@dataclass(frozen=True)
class TraceVerdict:
    ok: bool
    cycle: tuple[Vertex, ...] = field(default_factory=tuple)
    priority: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def odd_cycle(graph: nx.DiGraph) -> tuple[tuple[Vertex, ...], int] | None:
    """A cycle whose least priority is odd, with that priority, or None."""
    priorities = sorted({d["priority"] for _, d in graph.nodes(data=True) if d["priority"] % 2 == 1})
    for d in priorities:
        sub = graph.subgraph(v for v, data in graph.nodes(data=True) if data["priority"] >= d)
        for component in nx.strongly_connected_components(sub):
            marked = sorted(v for v in component if graph.nodes[v]["priority"] == d)
            for v in marked:
                if len(component) > 1 or sub.has_edge(v, v):
                    return _cycle_through(sub.subgraph(component), v), d
    return None


def _cycle_through(component: nx.DiGraph, vertex: Vertex) -> tuple[Vertex, ...]:
    if component.has_edge(vertex, vertex):
        return (vertex,)
    best: list[Vertex] | None = None
    for pred in sorted(component.predecessors(vertex)):
        path = nx.shortest_path(component, vertex, pred)
        if best is None or len(path) < len(best):
            best = path
    return tuple(best or (vertex,))


def check_traces(candidate: RegularCandidate, automaton: AlternatingTreeAutomaton) -> TraceVerdict:
    found = odd_cycle(trace_graph(candidate, automaton))
    if found is None:
        return TraceVerdict(True)
    cycle, priority = found
    return TraceVerdict(False, cycle, priority)
