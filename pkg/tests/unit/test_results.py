import json
import logging
import sys
import tempfile
import unittest
from datetime import datetime
from enum import Enum
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(ROOT / "packages" / "core"))

from pdgames_core.logging_setup import LOG_FILE, JsonFormatter, configure_logging, get_logger
from pdgames_core.results import ResultDocument, load_result_document


class ResultDocumentTests(unittest.TestCase):
    def test_write_and_load(self):
        doc = ResultDocument(
            status="SolvedPlayer0",
            winner="Player0",
            caps={"max_classes": 2},
            candidate_summary={"classes": [{"class": 0, "label": "⊥"}]},
            timings={"solve_s": 0.25},
        )
        with tempfile.TemporaryDirectory() as tmp:
            path = doc.write(Path(tmp) / "out" / "fig1.result.json")
            raw = json.loads(path.read_text(encoding="utf-8"))
            self.assertEqual(raw["winner"], "Player0")
            self.assertEqual(raw["candidate_summary"]["classes"][0]["label"], "⊥")
            reloaded = load_result_document(path)
        self.assertEqual(reloaded, doc)

    def test_unknown_keys_are_ignored_on_load(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "r.json"
            path.write_text(json.dumps({"status": "UnknownAtCap", "extra": 1}), encoding="utf-8")
            doc = load_result_document(path)
        self.assertEqual(doc.status, "UnknownAtCap")
        self.assertIsNone(doc.winner)


class JsonFormatterTests(unittest.TestCase):
    def test_event_is_carried(self):
        record = logging.LogRecord("pdgames.reduction", logging.INFO, __file__, 1, "round %d", (3,), None)
        record.event = "search_round"
        payload = json.loads(JsonFormatter().format(record))
        self.assertEqual(payload["msg"], "round 3")
        self.assertEqual(payload["event"], "search_round")
        self.assertEqual(payload["logger"], "pdgames.reduction")
        self.assertEqual(payload["area"], "reduction")
        self.assertNotIn("run", payload)

    def test_context_fields_are_plain_values(self):
        class Winner(Enum):
            P0 = "Player0"

        record = logging.LogRecord("pdgames", logging.INFO, __file__, 1, "done", (), None)
        record.player = Winner.P0
        record.game = "fig1"
        record.run = "abc"
        payload = json.loads(JsonFormatter().format(record))
        self.assertEqual(payload["player"], "Player0")
        self.assertEqual(payload["game"], "fig1")
        self.assertEqual(payload["run"], "abc")
        self.assertNotIn("area", payload)
        self.assertAlmostEqual(datetime.fromisoformat(payload["ts_utc"]).timestamp(), record.created, places=5)


class ConfigureLoggingTests(unittest.TestCase):
    def setUp(self):
        logger = get_logger()
        saved, level = list(logger.handlers), logger.level
        for handler in saved:
            logger.removeHandler(handler)

        def restore():
            for handler in list(logger.handlers):
                logger.removeHandler(handler)
                handler.close()
            for handler in saved:
                logger.addHandler(handler)
            logger.setLevel(level)

        self.addCleanup(restore)

    def test_area_loggers_are_children(self):
        self.assertEqual(get_logger().name, "pdgames")
        self.assertEqual(get_logger("machine").name, "pdgames.machine")
        self.assertIs(get_logger("machine").parent, get_logger())

    def test_run_file_collects_area_records(self):
        with tempfile.TemporaryDirectory() as tmp:
            logger = configure_logging(console=False, directory=Path(tmp))
            self.assertIs(configure_logging(console=False, directory=Path(tmp)), logger)
            self.assertEqual(len(logger.handlers), 1)
            get_logger("reduction").info("solved", extra={"event": "solve_finished", "status": "SolvedPlayer0"})
            get_logger("reduction").debug("not written")
            lines = [json.loads(line) for line in (Path(tmp) / LOG_FILE).read_text(encoding="utf-8").splitlines()]
        self.assertEqual([p["event"] for p in lines], ["logging_configured", "solve_finished"])
        self.assertEqual(lines[1]["status"], "SolvedPlayer0")
        self.assertEqual(lines[1]["area"], "reduction")
        self.assertEqual(lines[0]["run"], lines[1]["run"])

    def test_console_handler_only_shows_warnings(self):
        with tempfile.TemporaryDirectory() as tmp:
            logger = configure_logging(console=True, directory=Path(tmp))
            levels = sorted(h.level for h in logger.handlers)
        self.assertEqual(levels, [logging.NOTSET, logging.WARNING])


if __name__ == "__main__":
    unittest.main()
