import sys
import unittest
from dataclasses import replace
from pathlib import Path

import networkx as nx
import numpy as np

ROOT = Path(__file__).resolve().parents[2]
for pkg in ("core", "machine", "arena", "reduction", "verification"):
    sys.path.insert(0, str(ROOT / "packages" / pkg))

from pdgames_arena import parse_game
from pdgames_machine import BOTTOM, EPSILON, Condition, Player
from pdgames_reduction import (
    RETURN,
    ClassAutomaton,
    Move,
    RegularCandidate,
    SearchCaps,
    SolveStatus,
    StairAnnotation,
    build_automaton,
    check_consistency,
    check_traces,
    down,
    enumerate_candidates,
    instantiate_candidate,
    is_witness,
    least_annotation,
    odd_cycle,
    solve,
)
from pdgames_reduction.annotations import _least_parity, _least_stair
from pdgames_reduction.automaton import Atom, N
from pdgames_verification import fixtures

LASSO = ClassAutomaton((BOTTOM, "A"), {(0, "A"): 1, (1, "A"): 1})
WINNING_CHOICES = {0: {"q2": "b"}, 1: {"q2": "a", "q3": "d"}}

SMALL = SearchCaps(max_classes=3, max_prefix=3, max_period=3)

# s -a-> t at the root, t pushes into u, u returns to s
TOY_COL = {"s": 2, "t": 1, "u": 0}
TOY_MOVES = {
    0: frozenset({Move("s", "a", N, "t"), Move("t", EPSILON, down("A"), "u")}),
    1: frozenset({Move("u", "b", RETURN, "s")}),
}


def _random_lasso(rng):
    """Root plus a chain of up to three ``A`` classes that loops back or stays open."""
    k = int(rng.integers(1, 4))
    delta = {(i, "A"): i + 1 for i in range(k)}
    if rng.random() < 0.8:
        delta[(k, "A")] = int(rng.integers(1, k + 1))
    return ClassAutomaton((BOTTOM,) + ("A",) * k, delta)


def _random_moves(rng, classes, states, rate=0.2):
    directions = (N, down("A"), RETURN)
    return {
        p: frozenset(Move(q, EPSILON, d, t) for q in states for d in directions for t in states if rng.random() < rate)
        for p in classes.classes
    }


def _detours(classes, moves, col, p, stair=False, once=False, bound=120):
    """``(q, m, q')`` for every detour at class ``p`` found by explicit search over stack depths.

    ``m`` is the least priority after ``q``, counting only depth 0 when ``stair`` is set;
    ``once`` stops a detour at its first return.
    """
    levels = [p]
    while len(levels) < bound and (nxt := classes.successor(levels[-1], "A")) is not None:
        levels.append(nxt)
    states = {s for ms in moves.values() for m in ms for s in (m.source, m.target)}
    found = set()
    for q in states:
        start = (0, q, 10**6)
        seen, frontier = {start}, [start]
        while frontier:
            depth, state, low = frontier.pop()
            for m in moves[levels[depth]]:
                if m.source != state:
                    continue
                nd = depth + (1 if m.is_down else -1 if m.is_up else 0)
                if nd < 0 or nd >= len(levels):
                    continue
                nlow = min(low, col[m.target]) if not stair or nd == 0 else low
                if nd == 0:
                    found.add((q, nlow, m.target))
                    if once:
                        continue
                nxt = (nd, m.target, nlow)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    return found


class AutomatonTests(unittest.TestCase):
    def setUp(self):
        self.automaton = build_automaton(fixtures().fig1)

    def test_root_starts_game_and_verification(self):
        formula = self.automaton.formula(self.automaton.root, BOTTOM)
        self.assertEqual(formula.kind, "and")
        self.assertIn(Atom(EPSILON, N, "q0"), formula.atoms)
        self.assertIn(Atom(EPSILON, down("A"), self.automaton.verifiers["A"]), formula.atoms)
        self.assertEqual(self.automaton.col(self.automaton.root), 0)

    def test_owner_decides_connective(self):
        own = self.automaton.formula("q2", BOTTOM)
        self.assertEqual(own.kind, "or")
        self.assertEqual([a.letter for a in own.atoms], ["a", "b"])
        other = self.automaton.formula("q0", "A")
        self.assertEqual(other.kind, "and")
        self.assertIn(Atom("b", RETURN, "q1"), other.atoms)
        self.assertIn(Atom("a", down("A"), "q0"), other.atoms)

    def test_missing_rules_give_false(self):
        self.assertTrue(self.automaton.formula("q0", "nowhere").is_false)

    def test_requires_normal_form(self):
        game = parse_game("game g\ninput a\nstack A B\nstates q\ninit q\nq a _ -> q push A B\n")
        with self.assertRaises(ValueError):
            build_automaton(game)


class ClassAutomatonTests(unittest.TestCase):
    def test_lasso_shape(self):
        self.assertEqual(LASSO.chain(), [0, 1])
        self.assertEqual(LASSO.lasso_shape(), (1, 1))
        self.assertEqual(LASSO.class_of(("A", "A", "A")), 1)

    def test_root_must_be_bottom_without_incoming_edges(self):
        with self.assertRaises(ValueError):
            ClassAutomaton(("A",), {})
        with self.assertRaises(ValueError):
            ClassAutomaton((BOTTOM, "A"), {(1, "A"): 0})


class CandidateTests(unittest.TestCase):
    def setUp(self):
        self.automaton = build_automaton(fixtures().fig1)

    def test_counting_strategy_is_witness(self):
        candidate = instantiate_candidate(self.automaton, LASSO, WINNING_CHOICES)
        self.assertTrue(check_consistency(candidate, self.automaton).ok)
        self.assertTrue(check_traces(candidate, self.automaton).ok)
        self.assertTrue(is_witness(candidate, self.automaton))

    def test_annotation_summarizes_detours(self):
        candidate = instantiate_candidate(self.automaton, LASSO, WINNING_CHOICES)
        self.assertIn(("q0", 2, "q1"), candidate.annotation[1])
        self.assertIn(("q1", 0, "q2"), candidate.annotation[1])

    def test_wrong_zero_test_has_odd_trace(self):
        candidate = instantiate_candidate(self.automaton, LASSO, {0: {"q2": "a"}, 1: {"q2": "a", "q3": "d"}})
        verdict = check_traces(candidate, self.automaton)
        self.assertFalse(verdict.ok)
        self.assertEqual(verdict.priority, 1)
        self.assertFalse(is_witness(candidate, self.automaton))

    def test_missing_branch_breaks_consistency(self):
        candidate = instantiate_candidate(self.automaton, LASSO, WINNING_CHOICES)
        moves = dict(candidate.moves)
        moves[1] = frozenset(m for m in moves[1] if not (m.source == "q0" and m.letter == "b"))
        broken = type(candidate)(candidate.classes, moves, candidate.annotation, candidate.condition)
        verdict = check_consistency(broken, self.automaton)
        self.assertFalse(verdict.ok)
        self.assertTrue(any(v.startswith("condition 1") for v in verdict.violations))

    def test_extra_moves_never_clear_an_odd_cycle(self):
        rng = np.random.default_rng(3)
        failing = [c for c in enumerate_candidates(self.automaton, SearchCaps(2, 1, 1)) if not check_traces(c, self.automaton).ok]
        failing.append(instantiate_candidate(self.automaton, LASSO, {0: {"q2": "a"}, 1: {"q2": "a", "q3": "d"}}))
        states = sorted(self.automaton.states)
        for i, candidate in enumerate(failing[-20:]):
            extra = _random_moves(rng, candidate.classes, states, rate=0.05)
            moves = {p: candidate.moves[p] | extra[p] for p in candidate.classes.classes}
            annotation = least_annotation(candidate.classes, moves, self.automaton.priorities, self.automaton.condition)
            wider = RegularCandidate(candidate.classes, moves, annotation, candidate.condition)
            with self.subTest(i=i):
                self.assertFalse(check_traces(wider, self.automaton).ok)

    def test_enumeration_respects_lasso_caps(self):
        caps = SearchCaps(max_classes=2, max_prefix=1, max_period=1)
        found = list(enumerate_candidates(self.automaton, caps))
        self.assertTrue(found)
        self.assertTrue(all(c.lasso_shape() == (1, 1) for c in found))
        self.assertTrue(any(is_witness(c, self.automaton) for c in found))


class AnnotationTests(unittest.TestCase):
    def test_parity_entries_keep_least_priority(self):
        annotation = _least_parity(LASSO, TOY_MOVES, TOY_COL)
        self.assertEqual(
            annotation[0],
            frozenset({("s", 1, "t"), ("t", 0, "s"), ("s", 0, "s"), ("t", 0, "t"), ("s", 0, "t")}),
        )
        self.assertEqual(annotation[1], frozenset())

    def test_stair_entries_ignore_deeper_levels(self):
        label = _least_stair(LASSO, TOY_MOVES, TOY_COL)[0]
        self.assertEqual(label.once, frozenset({("s", "t"), ("t", "s")}))
        self.assertEqual(label.reach, frozenset({("s", "t"), ("t", "s"), ("s", "s"), ("t", "t")}))
        # u (priority 0) is only seen one level down
        self.assertEqual(
            label.minima,
            frozenset({("s", 1, "t"), ("t", 2, "s"), ("s", 1, "s"), ("t", 1, "t"), ("t", 1, "s")}),
        )
        self.assertEqual(_least_stair(LASSO, TOY_MOVES, TOY_COL)[1], StairAnnotation())

    def test_no_moves_give_empty_labels(self):
        self.assertEqual(least_annotation(LASSO, {}, TOY_COL), {0: frozenset(), 1: frozenset()})
        self.assertEqual(
            least_annotation(LASSO, {}, TOY_COL, Condition.STAIR),
            {0: StairAnnotation(), 1: StairAnnotation()},
        )
        returns_only = {0: frozenset({Move("s", "a", RETURN, "t")})}
        self.assertEqual(least_annotation(LASSO, returns_only, TOY_COL)[0], frozenset())

    def test_labels_are_exactly_the_searched_detours(self):
        rng = np.random.default_rng(11)
        for i in range(60):
            classes = _random_lasso(rng)
            states = ("s", "t", "u")[: int(rng.integers(2, 4))]
            col = {q: int(rng.integers(0, 3)) for q in states}
            moves = _random_moves(rng, classes, states)
            parity = least_annotation(classes, moves, col)
            stair = least_annotation(classes, moves, col, Condition.STAIR)
            for p in classes.classes:
                with self.subTest(i=i, cls=p):
                    self.assertEqual(parity[p], frozenset(_detours(classes, moves, col, p)))
                    minima = _detours(classes, moves, col, p, stair=True)
                    self.assertEqual(stair[p].minima, frozenset(minima))
                    self.assertEqual(stair[p].reach, frozenset((a, b) for a, _, b in minima))
                    once = _detours(classes, moves, col, p, stair=True, once=True)
                    self.assertEqual(stair[p].once, frozenset((a, b) for a, _, b in once))


class OddCycleTests(unittest.TestCase):
    def test_least_priority_decides(self):
        graph = nx.DiGraph()
        graph.add_node("x", priority=2)
        graph.add_node("y", priority=1)
        graph.add_node("z", priority=0)
        graph.add_edges_from([("x", "y"), ("y", "x"), ("y", "z"), ("z", "y")])
        cycle, priority = odd_cycle(graph)
        self.assertEqual(priority, 1)
        self.assertIn("y", cycle)
        graph.remove_edge("y", "x")
        graph.add_edge("x", "x")
        self.assertIsNone(odd_cycle(graph))


class SolveTests(unittest.TestCase):
    def test_fig1_player0_distinguishes_zero(self):
        result = solve(fixtures().fig1, SearchCaps(max_classes=2, max_prefix=2, max_period=2))
        self.assertIs(result.status, SolveStatus.SOLVED_PLAYER0)
        self.assertIs(result.winner, Player.P0)
        candidate = result.witness.candidate
        self.assertEqual(candidate.lasso_shape(), (1, 1))
        self.assertEqual([m.letter for m in candidate.moves_from(0, "q2")], ["b"])
        self.assertEqual([m.letter for m in candidate.moves_from(1, "q2")], ["a"])
        self.assertIn("elapsed_s", result.statistics)

    def test_unknown_at_cap(self):
        result = solve(fixtures().fig1, SearchCaps(max_classes=1, max_prefix=1, max_period=1))
        self.assertIs(result.status, SolveStatus.UNKNOWN_AT_CAP)
        self.assertIsNone(result.winner)
        self.assertIn("determined", result.message)

    def test_condition_changes_winner(self):
        game = fixtures().divergence
        self.assertIs(solve(game, SMALL).winner, Player.P0)
        parity = solve(replace(game, condition=Condition.PARITY), SMALL)
        self.assertIs(parity.winner, Player.P1)
        self.assertIs(parity.witness.player, Player.P1)

    def test_nondeterministic_arena_rejected(self):
        game = parse_game("game g\ninput a\nstates q r\ninit q\nq a _ -> q skip\nq a _ -> r skip\n")
        with self.assertRaises(ValueError):
            solve(game, SMALL)

    def test_accept_filter_can_reject_every_witness(self):
        result = solve(fixtures().fig1, SearchCaps(max_classes=2, max_prefix=2, max_period=2), accept=lambda w: False)
        self.assertIsNot(result.winner, Player.P0)


if __name__ == "__main__":
    unittest.main()
