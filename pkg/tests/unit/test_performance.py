import sys
import unittest
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(ROOT / "packages" / "core"))

from pdgames_core.performance import ResourceBudget, ResourceSampler


class PerformanceTests(unittest.TestCase):
    def test_sample_shape(self):
        sampler = ResourceSampler(ResourceBudget(rss_mb_max=1e9, seconds_max=1e9))
        sample = sampler.sample()
        self.assertGreaterEqual(sample.elapsed_s, 0.0)
        self.assertGreaterEqual(sampler.peak_rss_mb, sample.rss_mb)
        self.assertFalse(sample.overloaded)
        self.assertIsNone(sample.warning)

    def test_time_budget_flags_overload(self):
        sampler = ResourceSampler(ResourceBudget(rss_mb_max=1e9, seconds_max=-1.0))
        sample = sampler.sample()
        self.assertTrue(sample.overloaded)
        self.assertEqual(sample.warning, "time_over_budget")


if __name__ == "__main__":
    unittest.main()
