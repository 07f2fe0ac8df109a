"""Process resource sampling for solver runs."""

from __future__ import annotations

import time
from dataclasses import dataclass

try:
    import psutil
except Exception:  # pragma: no cover
    psutil = None


@dataclass(frozen=True)
class ResourceBudget:
    rss_mb_max: float = 2048.0
    seconds_max: float = 600.0


@dataclass(frozen=True)
class ResourceSample:
    cpu_percent: float
    rss_mb: float
    elapsed_s: float
    overloaded: bool
    warning: str | None


class ResourceSampler:
    def __init__(self, budget: ResourceBudget | None = None) -> None:
        self.budget = budget or ResourceBudget()
        self._process = psutil.Process() if psutil is not None else None
        if self._process is not None:
            # Prime non-blocking CPU measurement.
            self._process.cpu_percent(interval=None)
        self._started = time.perf_counter()
        self.peak_rss_mb = 0.0

    def sample(self) -> ResourceSample:
        if self._process is None:
            cpu = 0.0
            rss_mb = 0.0
        else:
            cpu = float(self._process.cpu_percent(interval=None))
            rss_mb = float(self._process.memory_info().rss) / (1024 * 1024)
        self.peak_rss_mb = max(self.peak_rss_mb, rss_mb)
        elapsed = time.perf_counter() - self._started

        warning = None
        if rss_mb > self.budget.rss_mb_max:
            warning = "rss_over_budget"
        elif elapsed > self.budget.seconds_max:
            warning = "time_over_budget"

        return ResourceSample(
            cpu_percent=cpu,
            rss_mb=rss_mb,
            elapsed_s=elapsed,
            overloaded=warning is not None,
            warning=warning,
        )
