"""统计汇总：比率给出二项置信区间，均值给出标准误。"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Mapping

import msgspec
from scipy.stats import binomtest

from ..common.exceptions import ParameterError

MIN_TRIALS = 100
RATE_SUFFIX = "_rate"


class MetricSummary(msgspec.Struct, frozen=True):
    name: str
    samples: int
    value: float
    low: float
    high: float


class StatsSummary(msgspec.Struct, frozen=True):
    protocol: str
    trials: int
    completed: int
    aborts: dict[str, int]
    confidence: float
    metrics: list[MetricSummary]

    def key_values(self) -> list[str]:
        lines = [
            f"protocol={self.protocol}",
            f"trials={self.trials}",
            f"completed={self.completed}",
            f"abort_rate={(self.trials - self.completed) / self.trials:.6f}",
        ]
        lines += [f"abort_{kind}={count}" for kind, count in sorted(self.aborts.items())]
        for metric in self.metrics:
            lines.append(f"{metric.name}={metric.value:.6f}")
            lines.append(f"{metric.name}_ci=[{metric.low:.6f},{metric.high:.6f}]")
        return lines

    def table(self) -> str:
        header = f"{'指标':<22}{'样本':>8}{'估计':>12}{'下界':>12}{'上界':>12}"
        rows = [header, "-" * len(header)]
        for metric in self.metrics:
            rows.append(
                f"{metric.name:<24}{metric.samples:>8}{metric.value:>12.4f}"
                f"{metric.low:>12.4f}{metric.high:>12.4f}"
            )
        return "\n".join(rows)


def check_trials(trials: int) -> None:
    if trials < MIN_TRIALS:
        raise ParameterError(f"统计至少需要 {MIN_TRIALS} 次试验: {trials}")


def _summarize_metric(name: str, values: list[float], confidence: float) -> MetricSummary:
    count = len(values)
    if name.endswith(RATE_SUFFIX):
        successes = round(sum(values))
        interval = binomtest(successes, count).proportion_ci(confidence_level=confidence)
        return MetricSummary(name, count, successes / count, interval.low, interval.high)
    mean = sum(values) / count
    spread = (
        math.sqrt(sum((v - mean) ** 2 for v in values) / (count - 1) / count) if count > 1 else 0.0
    )
    return MetricSummary(name, count, mean, mean - 2 * spread, mean + 2 * spread)


def summarize(
    protocol: str,
    trials: int,
    samples: Iterable[Mapping[str, float]],
    aborts: Counter,
    confidence: float = 0.95,
) -> StatsSummary:
    collected: dict[str, list[float]] = {}
    completed = 0
    for sample in samples:
        completed += 1
        for name, value in sample.items():
            collected.setdefault(name, []).append(value)
    metrics = [
        _summarize_metric(name, values, confidence)
        for name, values in sorted(collected.items())
    ]
    return StatsSummary(protocol, trials, completed, dict(aborts), confidence, metrics)


__all__ = [
    "MIN_TRIALS",
    "MetricSummary",
    "StatsSummary",
    "check_trials",
    "summarize",
]
