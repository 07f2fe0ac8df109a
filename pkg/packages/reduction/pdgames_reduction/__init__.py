"""Tree-automaton reduction: automaton construction, candidate search and solving."""

from .annotations import least_annotation
from .automaton import (
    DOWN,
    RETURN,
    STAY,
    UP,
    AlternatingTreeAutomaton,
    Atom,
    Direction,
    Formula,
    N,
    build_automaton,
    down,
)
from .candidate import (
    AnnotationLabel,
    ClassAutomaton,
    Move,
    ParityAnnotation,
    RegularCandidate,
    StairAnnotation,
    detour_entries,
)
from .consistency import ConsistencyVerdict, check_consistency
from .search import CandidateSearch, SearchCaps, enumerate_candidates, instantiate_candidate
from .solver import SolveResult, SolveStatus, Witness, is_witness, solve
from .traces import TraceVerdict, check_traces, odd_cycle, trace_graph

__all__ = [
    "DOWN",
    "RETURN",
    "STAY",
    "UP",
    "AlternatingTreeAutomaton",
    "AnnotationLabel",
    "Atom",
    "CandidateSearch",
    "ClassAutomaton",
    "ConsistencyVerdict",
    "Direction",
    "Formula",
    "Move",
    "N",
    "ParityAnnotation",
    "RegularCandidate",
    "SearchCaps",
    "SolveResult",
    "SolveStatus",
    "StairAnnotation",
    "TraceVerdict",
    "Witness",
    "build_automaton",
    "check_consistency",
    "check_traces",
    "detour_entries",
    "down",
    "enumerate_candidates",
    "instantiate_candidate",
    "is_witness",
    "least_annotation",
    "odd_cycle",
    "solve",
    "trace_graph",
]
