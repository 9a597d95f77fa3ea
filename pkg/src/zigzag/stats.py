"""Small statistics helpers shared by the estimators."""
from __future__ import annotations

import math
from typing import NamedTuple


class Estimate(NamedTuple):
    estimate: float
    stderr: float
    samples: int

    def within(self, target: float, sigmas: float = 4.0) -> bool:
        # a zero stderr means the estimator is deterministic; demand equality
        return abs(self.estimate - target) <= sigmas * self.stderr + 1e-12


def binomial_estimate(hits: int, samples: int, scale: float = 1.0) -> Estimate:
    """Frequency hits/samples divided by scale, with its binomial standard error."""
    p = hits / samples
    se = math.sqrt(p * (1 - p) / samples)
    return Estimate(p / scale, se / scale, samples)
