"""The descent walk of a permutation, Eulerian numbers, the limit profile of
an interval system, and the law-of-large-numbers and CLT experiments."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import stats

from .composition import check_permutation, word_descents
from .paintbox import IntervalSystem, paintbox_words
from .rng import map_chunks


def descent_walk(word: Sequence[int]) -> tuple[int, ...]:
    """Values f(0), ..., f(n-1): start at 0, step -1 at each descent and +1 otherwise."""
    w = check_permutation(word)
    des = set(word_descents(w))
    out = [0]
    for i in range(1, len(w)):
        out.append(out[-1] + (-1 if i in des else 1))
    return tuple(out)


def walks_from_words(words: np.ndarray) -> np.ndarray:
    steps = np.where(words[:, 1:] < words[:, :-1], -1, 1)
    zero = np.zeros((words.shape[0], 1), dtype=np.int64)
    return np.concatenate([zero, np.cumsum(steps, axis=1)], axis=1)


@lru_cache(maxsize=None)
def eulerian_row(n: int) -> tuple[int, ...]:
    """Counts of permutations of n by number of descents."""
    if n <= 1:
        return (1,)
    prev = eulerian_row(n - 1)
    row = []
    for k in range(n):
        a = (k + 1) * prev[k] if k < len(prev) else 0
        b = (n - k) * prev[k - 1] if k >= 1 else 0
        row.append(a + b)
    return tuple(row)


def eulerian(n: int, k: int) -> int:
    if n < 1 or not 0 <= k <= n - 1:
        return 0
    return eulerian_row(n)[k]


def descent_moments(n: int) -> tuple[Fraction, Fraction]:
    """Exact mean and variance of the descent count of a uniform permutation of n."""
    row = eulerian_row(n)
    total = math.factorial(n)
    mean = Fraction(sum(k * a for k, a in enumerate(row)), total)
    second = Fraction(sum(k * k * a for k, a in enumerate(row)), total)
    return mean, second - mean * mean


@dataclass(frozen=True)
class LimitProfile:
    """Piecewise linear function through (breakpoints[i], values[i])."""
    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __call__(self, t):
        xs = np.array([float(b) for b in self.breakpoints])
        ys = np.array([float(v) for v in self.values])
        return np.interp(t, xs, ys)

    def exact(self, t) -> Fraction:
        t = Fraction(t)
        for (a, fa), (b, fb) in zip(zip(self.breakpoints, self.values),
                                    zip(self.breakpoints[1:], self.values[1:])):
            if a <= t <= b:
                return fa + (fb - fa) * (t - a) / (b - a)
        raise ValueError(f"{t} outside [0, 1]")


def limit_profile(u: IntervalSystem) -> LimitProfile:
    """Integral from 0 of the slope field: +1 on up, -1 on down, 0 elsewhere."""
    bps = sorted({Fraction(0), Fraction(1), *u.endpoints()})
    comps = u.components()
    values = [Fraction(0)]
    for a, b in zip(bps, bps[1:]):
        mid = (a + b) / 2
        slope = 0
        for left, right, up in comps:
            if left < mid < right:
                slope = 1 if up else -1
        values.append(values[-1] + slope * (b - a))
    return LimitProfile(tuple(bps), tuple(values))


@dataclass
class LLNResult:
    n: int
    distances: np.ndarray
    redraws: int

    @property
    def mean(self) -> float:
        return float(self.distances.mean())

    @property
    def max(self) -> float:
        return float(self.distances.max())


def lln_experiment(u: IntervalSystem, n: int, samples: int, rng: np.random.Generator
                   ) -> LLNResult:
    """Sup distance between the rescaled walk of a paintbox word on n+1 letters and the profile.

    Both functions are piecewise linear, so the sup is attained on the union of
    the lattice points i/n and the breakpoints of the profile.
    """
    profile = limit_profile(u)
    words, redraws = paintbox_words(u, n + 1, samples, rng)
    walks = walks_from_words(words) / n
    grid = np.arange(n + 1) / n
    ts = np.union1d(grid, np.array([float(b) for b in profile.breakpoints]))
    rescaled = np.stack([np.interp(ts, grid, w) for w in walks])
    dist = np.abs(rescaled - profile(ts)[None, :]).max(axis=1)
    return LLNResult(n, dist, redraws)


@dataclass
class CLTResult:
    n: int
    statistic: np.ndarray  # (#Des - n/2) / sqrt(n) per replicate
    ks: float
    pvalue: float
    times: tuple[float, ...]
    walk_marginals: np.ndarray  # f(n t) / sqrt(n), one column per time

    def covariance(self, i: int, j: int) -> tuple[float, float, float]:
        """Empirical covariance of two marginals, its standard error, and the Brownian target."""
        x = self.walk_marginals[:, i]
        y = self.walk_marginals[:, j]
        prod = (x - x.mean()) * (y - y.mean())
        m = len(prod)
        cov = prod.sum() / (m - 1)
        se = prod.std(ddof=1) / math.sqrt(m)
        return float(cov), float(se), min(self.times[i], self.times[j]) / 3


def clt_experiment(n: int, samples: int, rng: np.random.Generator,
                   times: Sequence[float] = (0.25, 0.5, 0.75), chunk: int = 500) -> CLTResult:
    """Descent statistics of uniform permutations of n.

    A uniform permutation has the descent pattern of n iid uniforms, so the
    words themselves are never built.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    idx = [int(round(n * t)) for t in times]

    def work(size, g):
        x = g.random((size, n))
        desc = x[:, 1:] < x[:, :-1]
        cum = np.cumsum(desc, axis=1)
        count = cum[:, -1]
        # f(m) = m - 2 * (descents among positions 1..m)
        marg = np.stack([m - 2 * (cum[:, m - 1] if m >= 1 else 0) for m in idx], axis=1)
        return count, marg

    parts = map_chunks(work, samples, rng, chunk=chunk)
    counts = np.concatenate([p[0] for p in parts])
    marg = np.concatenate([p[1] for p in parts]).astype(float) / math.sqrt(n)
    statistic = (counts - n / 2) / math.sqrt(n)
    ks = stats.kstest(statistic, "norm", args=(0.0, math.sqrt(1 / 12)))
    return CLTResult(n, statistic, float(ks.statistic), float(ks.pvalue), tuple(times), marg)
