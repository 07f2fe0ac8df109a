import sys
import unittest
from dataclasses import replace
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[2]
for pkg in ("core", "machine", "arena", "verification"):
    sys.path.insert(0, str(ROOT / "packages" / pkg))

from pdgames_machine import (
    BOTTOM,
    EPSILON,
    Action,
    Condition,
    Configuration,
    FormatDescriptor,
    LassoRun,
    Player,
    PriorityFunction,
    PushdownMachine,
    Rule,
    VisiblyAlphabet,
    accepts_lasso_word,
    check_format,
    dpda_to_stdpda,
    evaluate_lasso,
    is_normal_form,
    lasso_verdict,
    normalize,
    padding_priority,
    run_on_lasso_word,
    step,
    steps_bruteforce,
    steps_positions,
    unrolled_heights,
)
from pdgames_arena import normalize_game
from pdgames_verification import finite_arena_oracle, fixtures, random_closed_game, random_dpda


def _machine(rules, states, stack=("A",), letters=("a", "b"), deterministic=True, init=None):
    return PushdownMachine(
        states=frozenset(states),
        input_alphabet=frozenset(letters),
        stack_alphabet=frozenset(stack),
        initial_state=init or sorted(states)[0],
        rules=tuple(rules),
        deterministic=deterministic,
    )


class RuleModelTests(unittest.TestCase):
    def test_actions(self):
        self.assertIs(Rule("q", "a", "A", "q", ("B", "A")).action, Action.PUSH)
        self.assertIs(Rule("q", "a", "A", "q", ()).action, Action.POP)
        self.assertIs(Rule("q", "a", "A", "q", ("A",)).action, Action.SKIP)
        self.assertIs(Rule("q", "a", "A", "q", ("B",)).action, Action.REWRITE)
        self.assertEqual(Rule("q", "a", "A", "q", ("B", "C", "A")).pushed, ("B", "C"))
        self.assertEqual(Rule("q", "a", "A", "q", ()).height_change, -1)

    def test_configuration_needs_single_bottom(self):
        with self.assertRaises(ValueError):
            Configuration("q", ("A",))
        with self.assertRaises(ValueError):
            Configuration("q", (BOTTOM, BOTTOM))
        self.assertEqual(Configuration("q", ("A", BOTTOM)).height, 2)

    def test_bottom_cannot_be_popped(self):
        with self.assertRaises(ValueError):
            _machine([Rule("q", "a", BOTTOM, "q", ())], {"q"})

    def test_determinism_is_enforced(self):
        rules = [Rule("q", "a", BOTTOM, "q", (BOTTOM,)), Rule("q", "a", BOTTOM, "r", (BOTTOM,))]
        with self.assertRaises(ValueError):
            _machine(rules, {"q", "r"})
        machine = _machine(rules, {"q", "r"}, deterministic=False)
        self.assertEqual(len(step(machine, machine.initial, "a")), 2)

    def test_epsilon_rule_excludes_other_rules(self):
        rules = [Rule("q", EPSILON, BOTTOM, "q", (BOTTOM,)), Rule("q", "a", BOTTOM, "q", (BOTTOM,))]
        verdict = check_format(_machine(rules, {"q"}, deterministic=False), FormatDescriptor(deterministic=True))
        self.assertFalse(verdict.ok)

    def test_negative_priority_rejected(self):
        with self.assertRaises(ValueError):
            PriorityFunction({"q": -1})


class FormatTests(unittest.TestCase):
    def test_fixtures_satisfy_their_declared_formats(self):
        for name, game in fixtures().items():
            with self.subTest(game=name):
                self.assertTrue(check_format(game.machine, game.fmt).ok)

    def test_epsilon_breaks_realtime(self):
        machine = _machine([Rule("q", EPSILON, BOTTOM, "q", (BOTTOM,))], {"q"})
        verdict = check_format(machine, FormatDescriptor.of("realtime"))
        self.assertFalse(verdict.ok)
        self.assertIn("realtime", verdict.violations[0])

    def test_blind_needs_identical_rule_on_counter(self):
        machine = _machine([Rule("q", "a", BOTTOM, "q", ("A", BOTTOM))], {"q"})
        self.assertFalse(check_format(machine, FormatDescriptor.of("blind")).ok)
        twin = _machine(
            [Rule("q", "a", BOTTOM, "q", ("A", BOTTOM)), Rule("q", "a", "A", "q", ("A", "A"))],
            {"q"},
        )
        self.assertTrue(check_format(twin, FormatDescriptor.of("blind")).ok)

    def test_visibly_call_may_not_depend_on_top(self):
        valph = VisiblyAlphabet(calls={"a"}, returns={"b"})
        machine = _machine(
            [Rule("q", "a", BOTTOM, "q", ("A", BOTTOM)), Rule("q", "a", "A", "r", ("A", "A"))],
            {"q", "r"},
        )
        verdict = check_format(machine, FormatDescriptor.of("visibly", visibly=valph))
        self.assertTrue(any("depends on the stack top" in v for v in verdict.violations))

    def test_visibly_requires_realtime_flag(self):
        valph = VisiblyAlphabet(calls={"a"}, returns={"b"})
        self.assertTrue(FormatDescriptor.of("visibly", visibly=valph).realtime)
        with self.assertRaises(ValueError):
            FormatDescriptor.of("visibly")

    def test_unknown_flag(self):
        with self.assertRaises(ValueError):
            FormatDescriptor.of("weird")


class NormalizeTests(unittest.TestCase):
    def test_identity_for_normal_machines(self):
        game = fixtures().fig1
        norm = normalize(game.machine, game.col)
        self.assertEqual(norm.translation.mode, "identity")
        self.assertIs(norm.machine, game.machine)

    def test_multi_push_becomes_chain(self):
        machine = _machine([Rule("q", "a", BOTTOM, "r", ("A", "B", BOTTOM))], {"q", "r"}, stack=("A", "B"))
        norm = normalize(machine, PriorityFunction({"q": 1, "r": 1}))
        self.assertEqual(norm.translation.mode, "chain")
        self.assertTrue(is_normal_form(norm.machine))
        self.assertEqual(len(norm.intermediates), 1)
        (mid,) = norm.intermediates
        self.assertEqual(norm.col[mid], 2)
        config = norm.machine.initial
        config = step(norm.machine, config, "a")[0]
        self.assertIsNone(norm.translation.decode(config))
        config = step(norm.machine, config, EPSILON)[0]
        self.assertEqual(config, Configuration("r", ("A", "B", BOTTOM)))

    def test_rewrite_moves_top_into_state(self):
        machine = _machine(
            [Rule("q", "a", BOTTOM, "q", ("A", BOTTOM)), Rule("q", "b", "A", "q", ("B",))],
            {"q"},
            stack=("A", "B"),
        )
        norm = normalize(machine, PriorityFunction({"q": 0}))
        self.assertEqual(norm.translation.mode, "top")
        self.assertTrue(is_normal_form(norm.machine))
        config = machine.initial
        encoded = norm.translation.encode(config)
        for letter in ("a", "b"):
            config = step(machine, config, letter)[0]
            encoded = step(norm.machine, encoded, letter)[0]
            self.assertEqual(norm.translation.decode(encoded), config)
            self.assertEqual(encoded.height, config.height)

    def test_normalized_games_keep_their_winner(self):
        rng = np.random.default_rng(5)
        wanted = {"identity": 40, "chain": 40, "top": 40}
        for attempt in range(2000):
            if not any(wanted.values()):
                break
            mode = next(m for m, left in wanted.items() if left)
            game = random_closed_game(
                rng,
                kind="generic" if mode == "identity" else "realtime",
                states=2 + attempt % 3,
                symbols=2,
                name=f"g{attempt}",
            )
            if mode == "chain":
                rules = tuple(replace(r, word=(r.top,)) if r.action is Action.REWRITE else r for r in game.machine.rules)
                game = replace(game, machine=replace(game.machine, rules=rules))
            encoded = normalize_game(game)
            if encoded.normalization.translation.mode != mode:
                continue
            wanted[mode] -= 1
            with self.subTest(game=game.name, mode=mode):
                self.assertTrue(is_normal_form(encoded.game.machine))
                self.assertIs(finite_arena_oracle(encoded.game, 3), finite_arena_oracle(game, 3))
        self.assertEqual(wanted, {"identity": 0, "chain": 0, "top": 0})

    def test_padding_priority_is_even_maximum(self):
        self.assertEqual(padding_priority(PriorityFunction({"a": 1, "b": 3})), 4)
        self.assertEqual(padding_priority(PriorityFunction({"a": 0, "b": 2})), 2)

    def test_missing_priority(self):
        machine = _machine([], {"q", "r"})
        with self.assertRaises(ValueError):
            normalize(machine, PriorityFunction({"q": 0}))


class StepsTests(unittest.TestCase):
    def test_flat_cycle(self):
        pattern = steps_positions([1, 2, 3], [3, 4], delta=0)
        self.assertEqual(pattern.prefix, frozenset({0, 1, 2}))
        self.assertEqual(pattern.periodic, frozenset({0}))
        self.assertEqual(pattern.positions(9), [0, 1, 2, 3, 5, 7])

    def test_growing_cycle_keeps_every_position(self):
        pattern = steps_positions([1], [1, 2], delta=1)
        self.assertEqual(pattern.positions(7), list(range(7)))

    def test_matches_bruteforce_on_unrolling(self):
        cases = [
            ([1, 2, 3, 2], [2, 3, 4, 3], 0),
            ([2, 3], [3, 2, 3], 1),
            ([1], [2, 4, 3], 2),
            ([3, 1, 2], [2, 3], 0),
        ]
        for prefix, cycle, delta in cases:
            with self.subTest(prefix=prefix, cycle=cycle, delta=delta):
                pattern = steps_positions(prefix, cycle, delta)
                heights = unrolled_heights(prefix, cycle, delta, len(prefix) + 12 * len(cycle))
                horizon = len(prefix) + 4 * len(cycle)
                brute = [n for n in steps_bruteforce(heights) if n < horizon]
                self.assertEqual(pattern.positions(horizon), brute)

    def test_rising_cycle_with_dip(self):
        pattern = steps_positions([2], [3, 2, 3, 4], delta=1)
        self.assertEqual(pattern.prefix, frozenset({0}))
        self.assertEqual(pattern.periodic, frozenset({1, 2}))
        self.assertEqual(pattern.positions(12), [0, 2, 3, 6, 7, 10, 11])
        heights = unrolled_heights([2], [3, 2, 3, 4], 1, 200)
        brute = [n for n in steps_bruteforce(heights) if n < 150]
        self.assertEqual(pattern.positions(150), brute)

    def test_cycle_must_not_lower_stack(self):
        with self.assertRaises(ValueError):
            steps_positions([1], [2, 1], delta=-1)


class LassoVerdictTests(unittest.TestCase):
    def setUp(self):
        self.col = PriorityFunction({"s0": 2, "s1": 1})
        self.run = LassoRun(
            prefix=(),
            cycle=(Configuration("s0"), Configuration("s1", ("A", BOTTOM))),
        )

    def test_parity_takes_least_cycle_priority(self):
        verdict = lasso_verdict(self.run, self.col, Condition.PARITY)
        self.assertEqual(verdict.priority, 1)
        self.assertIs(verdict.winner, Player.P1)

    def test_stair_only_reads_steps_positions(self):
        verdict = lasso_verdict(self.run, self.col, Condition.STAIR)
        self.assertEqual(verdict.positions, (0,))
        self.assertIs(evaluate_lasso(self.run, self.col, Condition.STAIR), Player.P0)

    def test_pumping_lasso_must_keep_floor(self):
        with self.assertRaises(ValueError):
            LassoRun(
                prefix=(),
                cycle=(Configuration("s0", ("A", "B", BOTTOM)),),
                closing=Configuration("s0", ("A", "A", "A", BOTTOM)),
            )
        run = LassoRun(prefix=(), cycle=(Configuration("s0", ("A", BOTTOM)),), closing=Configuration("s0", ("A", "A", BOTTOM)))
        self.assertEqual(run.growth, 1)
        self.assertEqual(run.unroll_once().cycle[0], Configuration("s0", ("A", "A", BOTTOM)))


class StairConversionTests(unittest.TestCase):
    def _alternating(self):
        machine = _machine(
            [Rule("s0", "a", BOTTOM, "s1", ("A", BOTTOM)), Rule("s1", "b", "A", "s0", ())],
            {"s0", "s1"},
        )
        return machine, PriorityFunction({"s0": 2, "s1": 1})

    def test_same_machine_differs_under_stair_reading(self):
        machine, col = self._alternating()
        self.assertFalse(accepts_lasso_word(machine, col, Condition.PARITY, [], ["a", "b"]))
        self.assertTrue(accepts_lasso_word(machine, col, Condition.STAIR, [], ["a", "b"]))

    def test_conversion_keeps_parity_language(self):
        machine, col = self._alternating()
        converted, colors = dpda_to_stdpda(machine, col)
        self.assertTrue(converted.deterministic)
        self.assertEqual(converted.initial_state, "s0@2:2")
        self.assertFalse(accepts_lasso_word(converted, colors, Condition.STAIR, [], ["a", "b"]))
        run = run_on_lasso_word(converted, [], ["a", "b"])
        self.assertEqual([c.state for c in run.cycle], ["s0@1:1", "s1@1:1"])

    def test_conversion_agrees_on_random_dpdas(self):
        rng = np.random.default_rng(7)
        for index in range(10):
            machine, col = random_dpda(rng, states=3, letters=2, symbols=2, max_priority=3)
            converted, colors = dpda_to_stdpda(machine, col)
            for _ in range(100):
                prefix = rng.choice(["a", "b"], size=int(rng.integers(0, 4))).tolist()
                period = rng.choice(["a", "b"], size=int(rng.integers(1, 5))).tolist()
                with self.subTest(machine=index, prefix=prefix, period=period):
                    self.assertEqual(
                        accepts_lasso_word(machine, col, Condition.PARITY, prefix, period),
                        accepts_lasso_word(converted, colors, Condition.STAIR, prefix, period),
                    )

    def test_nondeterministic_input_rejected(self):
        machine = _machine(
            [Rule("s0", "a", BOTTOM, "s0", (BOTTOM,)), Rule("s0", "a", BOTTOM, "s1", (BOTTOM,))],
            {"s0", "s1"},
            deterministic=False,
        )
        with self.assertRaises(ValueError):
            dpda_to_stdpda(machine, PriorityFunction({"s0": 0, "s1": 0}))


if __name__ == "__main__":
    unittest.main()
