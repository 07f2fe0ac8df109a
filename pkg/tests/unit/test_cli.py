import contextlib
import io
import json
import sys
import tempfile
import unittest
from pathlib import Path
from unittest import mock

ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(ROOT / "apps" / "cli"))
for pkg in ("core", "machine", "arena", "reduction", "synthesis", "verification"):
    sys.path.insert(0, str(ROOT / "packages" / pkg))

from pdgames_app import cli
from pdgames_app.cli import build_parser, main
from pdgames_arena import load_game, load_strategy
from pdgames_core import AppConfig
from pdgames_machine import Condition
from pdgames_verification import write_fixtures

SMALL = ["--max-classes", "2", "--max-prefix", "2", "--max-period", "2"]


class ParserTests(unittest.TestCase):
    def test_solve_command(self):
        args = build_parser().parse_args(["solve", "g.game", "--format-strategy", "blind", "--max-classes", "3"])
        self.assertEqual(args.command, "solve")
        self.assertEqual(args.format_strategy, "blind")
        self.assertEqual(args.max_classes, 3)
        self.assertFalse(args.no_prune)

    def test_convert_stair_command(self):
        args = build_parser().parse_args(["convert", "stair", "g.game"])
        self.assertEqual(args.command, "convert")
        self.assertEqual(args.convert_cmd, "stair")

    def test_verify_defaults(self):
        args = build_parser().parse_args(["verify", "g.game"])
        self.assertEqual(args.mode, "oracle")
        self.assertEqual(args.height_cap, 3)

    def test_fixtures_help_lists_reference_outcomes(self):
        out = io.StringIO()
        with contextlib.redirect_stdout(out), self.assertRaises(SystemExit):
            build_parser().parse_args(["fixtures", "--help"])
        self.assertIn("only visibly+oneCounter ends UnknownAtCap", out.getvalue())
        self.assertIn("fig1 at --height-cap 3 has 13 nodes", out.getvalue())

    def test_unknown_format_rejected(self):
        with contextlib.redirect_stderr(io.StringIO()), self.assertRaises(SystemExit):
            build_parser().parse_args(["synthesize", "g.game", "--format", "finiteState"])


class CommandTests(unittest.TestCase):
    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.dir = Path(tmp.name)
        write_fixtures(self.dir)
        for target in ("load_config", "configure_logging"):
            patcher = mock.patch.object(cli, target, return_value=AppConfig() if target == "load_config" else None)
            patcher.start()
            self.addCleanup(patcher.stop)

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def game(self, name):
        return str(self.dir / f"{name}.game")

    def test_check_format(self):
        code, out, _ = self.run_cli("check-format", self.game("fig1"))
        self.assertEqual(code, cli.EXIT_OK)
        self.assertTrue(json.loads(out)["ok"])
        code, out, _ = self.run_cli("check-format", self.game("lwin"), "--format", "blind")
        self.assertEqual(code, cli.EXIT_FALSE)
        self.assertFalse(json.loads(out)["ok"])

    def test_solve_writes_outputs(self):
        out_dir = self.dir / "out"
        code, out, _ = self.run_cli("solve", self.game("fig1"), *SMALL, "--out", str(out_dir))
        self.assertEqual(code, cli.EXIT_OK)
        doc = json.loads(out)
        self.assertEqual(doc["status"], "SolvedPlayer0")
        self.assertEqual(doc["candidate_summary"]["player"], doc["winner"])
        self.assertTrue((out_dir / "fig1.result.json").exists())
        strategy = load_strategy(out_dir / "fig1-general.strategy")
        self.assertEqual(strategy.initial_state, "q0")

    def test_solve_unknown_at_cap(self):
        code, out, _ = self.run_cli("solve", self.game("fig1"), *SMALL, "--format-strategy", "blind")
        self.assertEqual(code, cli.EXIT_UNKNOWN)
        self.assertEqual(json.loads(out)["status"], "UnknownAtCap")

    def test_condition_override(self):
        code, out, _ = self.run_cli("solve", self.game("divergence"), *SMALL, "--condition", "parity")
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(json.loads(out)["status"], "SolvedPlayer1")

    def test_synthesize_prints_strategy(self):
        code, out, _ = self.run_cli("synthesize", self.game("fig1"), *SMALL, "--format", "oneCounter")
        self.assertEqual(code, cli.EXIT_OK)
        path = self.dir / "fig1.strategy"
        path.write_text(out, encoding="utf-8")
        self.assertEqual(len(load_strategy(path).stack_alphabet), 1)

    def test_simulate_scripted(self):
        code, out, _ = self.run_cli("simulate", self.game("fig1"), *SMALL, "--adversary", "scripted:a,b,c")
        self.assertEqual(code, cli.EXIT_OK)
        record = json.loads(out)
        self.assertEqual(record["protagonist"], "Player0")
        self.assertEqual(record["winner"], "Player0")

    def test_random_simulation_is_reproducible(self):
        argv = ("simulate", self.game("fig1"), *SMALL, "--adversary", "random:7")
        first = self.run_cli(*argv)
        self.assertEqual(first, self.run_cli(*argv))
        self.assertEqual(first[0], cli.EXIT_OK)

    def test_verify_oracle(self):
        code, out, _ = self.run_cli("verify", self.game("divergence"), *SMALL, "--condition", "parity", "--height-cap", "2")
        self.assertEqual(code, cli.EXIT_OK)
        self.assertTrue(json.loads(out)["agree"])

    def test_verify_oracle_rejects_stair(self):
        code, _, err = self.run_cli("verify", self.game("divergence"), *SMALL)
        self.assertEqual(code, cli.EXIT_USAGE)
        self.assertIn("error:", err)

    def test_verify_validate(self):
        code, out, _ = self.run_cli("verify", self.game("fig1"), *SMALL, "--mode", "validate", "--depth", "12", "--height", "6")
        self.assertEqual(code, cli.EXIT_OK)
        self.assertTrue(json.loads(out)["clean"])

    def test_convert_stair(self):
        code, out, _ = self.run_cli("convert", "stair", self.game("fig1"))
        self.assertEqual(code, cli.EXIT_OK)
        path = self.dir / "fig1-stair.game"
        path.write_text(out, encoding="utf-8")
        game = load_game(path)
        self.assertIs(game.condition, Condition.STAIR)
        self.assertEqual(game.machine.initial_state, "q0@2:2")

    def test_convert_rejects_stair_input(self):
        code, _, _ = self.run_cli("convert", "stair", self.game("divergence"))
        self.assertEqual(code, cli.EXIT_USAGE)

    def test_export_dot(self):
        code, out, _ = self.run_cli("export-dot", self.game("fig1"))
        self.assertEqual(code, cli.EXIT_OK)
        self.assertTrue(out.startswith("digraph"))

    def test_export_dot_counts_reachable_configurations(self):
        _, out, _ = self.run_cli("export-dot", self.game("fig1"), "--height-cap", "3")
        nodes = [line for line in out.splitlines() if "shape=" in line and "->" not in line]
        self.assertEqual(len(nodes), 13)

    def test_normalize_identity(self):
        code, out, _ = self.run_cli("normalize", self.game("fig1"))
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn("game fig1-normal", out)

    def test_fixtures_command(self):
        code, out, _ = self.run_cli("fixtures", str(self.dir / "again"))
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(len(json.loads(out)), 3)

    def test_missing_file(self):
        code, _, err = self.run_cli("solve", str(self.dir / "absent.game"))
        self.assertEqual(code, cli.EXIT_USAGE)
        self.assertTrue(err.startswith("error:"))


if __name__ == "__main__":
    unittest.main()
