import json
import sys
import tempfile
import unittest
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(ROOT / "packages" / "core"))

from pdgames_core.config import CAPS_ENV, AppConfig, load_config, parse_caps, save_config


class ConfigTests(unittest.TestCase):
    def test_load_default_when_missing(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "missing.json"
            cfg = load_config(path, environ={})
            self.assertIsInstance(cfg, AppConfig)
            self.assertEqual(cfg.search.max_classes, 6)
            self.assertEqual(cfg.validation.depth, 24)
            self.assertEqual(cfg.simulation.seed, 0)

    def test_save_and_reload(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "config.json"
            cfg = load_config(path, environ={})
            cfg.search.max_prefix = 11
            cfg.simulation.max_height = 5
            save_config(cfg, path)
            reloaded = load_config(path, environ={})
            self.assertEqual(reloaded.search.max_prefix, 11)
            self.assertEqual(reloaded.simulation.max_height, 5)

    def test_migrate_v1_flat_caps(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "config.json"
            old = {"max_classes": 3, "max_period": 4, "simulation": {"max_steps": 50}}
            path.write_text(json.dumps(old), encoding="utf-8")
            cfg = load_config(path, environ={})
            self.assertEqual(cfg.search.max_classes, 3)
            self.assertEqual(cfg.search.max_period, 4)
            self.assertEqual(cfg.simulation.max_steps, 50)
            self.assertEqual(cfg.config_version, 2)

    def test_corrupt_file_falls_back_to_defaults(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "config.json"
            path.write_text("{not json", encoding="utf-8")
            cfg = load_config(path, environ={})
            self.assertEqual(cfg.search.max_classes, 6)

    def test_environment_caps_override_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "config.json"
            cfg = load_config(path, environ={CAPS_ENV: "2, 3, 4"})
            self.assertEqual((cfg.search.max_classes, cfg.search.max_prefix, cfg.search.max_period), (2, 3, 4))

    def test_values_are_clamped(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "config.json"
            path.write_text(json.dumps({"config_version": 2, "search": {"max_classes": 500, "max_nodes": 1}}), encoding="utf-8")
            cfg = load_config(path, environ={})
            self.assertEqual(cfg.search.max_classes, 64)
            self.assertEqual(cfg.search.max_nodes, 1000)

    def test_parse_caps_rejects_malformed(self):
        self.assertIsNone(parse_caps(None))
        self.assertIsNone(parse_caps("1,2"))
        self.assertIsNone(parse_caps("1,x,3"))
        self.assertIsNone(parse_caps("0,1,1"))
        self.assertEqual(parse_caps("4,5,6"), (4, 5, 6))


if __name__ == "__main__":
    unittest.main()
