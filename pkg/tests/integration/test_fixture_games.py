import sys
import tempfile
import unittest
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]
for pkg in ("core", "machine", "arena", "reduction", "synthesis", "verification"):
    sys.path.insert(0, str(ROOT / "packages" / pkg))

from pdgames_arena import StrategyRunner, format_strategy, legal_moves, load_game, load_strategy
from pdgames_machine import Player
from pdgames_reduction import SearchCaps, SolveStatus
from pdgames_synthesis import solve_for_format
from pdgames_verification import fixtures, validate_strategy

FIXTURE_DIR = ROOT / "fixtures"


def _play(game, strategy, script, steps):
    """Letters of a play where Player 1 follows ``script`` and then repeats its last letter."""
    runner = StrategyRunner(strategy)
    config, letters, pending = game.initial, [], list(script)
    last = None
    for _ in range(steps):
        moves = dict(legal_moves(game, config))
        if not moves:
            break
        if game.owner[config.state] is strategy.player:
            letter = runner.respond()
        else:
            letter = pending.pop(0) if pending else last
            last = letter
            runner.observe(letter)
        config = moves[letter]
        letters.append(letter)
    return tuple(letters), config


class FixtureFileTests(unittest.TestCase):
    def test_checked_in_games_match_builtin(self):
        builtin = dict(fixtures().items())
        for path in sorted(FIXTURE_DIR.glob("*.game")):
            with self.subTest(path=path.name):
                self.assertEqual(load_game(path), builtin[path.stem])


class EndToEndTests(unittest.TestCase):
    def test_lwin_visibly_strategy_survives_file_and_validation(self):
        game = load_game(FIXTURE_DIR / "lwin.game")
        result, strategy = solve_for_format(game, "visibly", SearchCaps(4, 3, 2))
        self.assertIs(result.status, SolveStatus.SOLVED_PLAYER0)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "lwin-visibly.strategy"
            path.write_text(format_strategy(strategy), encoding="utf-8")
            loaded = load_strategy(path)
        self.assertEqual(loaded.rules, strategy.rules)
        self.assertIs(loaded.player, Player.P0)

        report = validate_strategy(loaded, game, depth=40, height=14)
        self.assertTrue(report.clean, report.to_dict())

        # c^n a must be answered by r^(n-2) a r r, after which only z is reachable
        for n in range(2, 13):
            with self.subTest(n=n):
                expected = ("c",) * n + ("a",) + ("r",) * (n - 2) + ("a", "r", "r", "a")
                letters, final = _play(game, loaded, ["c"] * n + ["a"], len(expected) + 3)
                self.assertEqual(letters[: len(expected)], expected)
                self.assertEqual(final.state, "z")

    def test_divergence_depends_on_condition(self):
        game = load_game(FIXTURE_DIR / "divergence.game")
        result, strategy = solve_for_format(game, "general", SearchCaps(2, 2, 2))
        self.assertIs(result.winner, Player.P0)
        self.assertTrue(validate_strategy(strategy, game).clean)


if __name__ == "__main__":
    unittest.main()
