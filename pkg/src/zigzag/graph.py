"""The graded graph of compositions: covers, exact path counts, the Martin
kernel, uniform filling sampling and a harmonicity checker.

Internally a composition of m is also handled as an integer bitmask whose bit
i-1 is set when i is a descent; that keeps the level-by-level path count cheap.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate
from typing import Mapping, NamedTuple

import numpy as np

from .composition import (
    EMPTY,
    Composition,
    composition_from_descents,
    compositions,
)
from .errors import IncompleteInputError
from .rng import map_chunks
from .stats import Estimate, binomial_estimate


def descent_mask(lam: Composition) -> int:
    return sum(1 << (d - 1) for d in lam.descents)


def from_mask(mask: int, n: int) -> Composition:
    return composition_from_descents([i + 1 for i in range(n - 1) if mask >> i & 1], n)


def _up_masks(mask: int, m: int) -> set[int]:
    """Descent masks after inserting a new maximum at each position 1..m+1."""
    out = set()
    for p in range(1, m + 2):
        low = mask & ((1 << max(p - 2, 0)) - 1)
        high = (mask >> (p - 1)) << p
        new = low | high
        if p <= m:
            new |= 1 << (p - 1)
        out.add(new)
    return out


def _down_masks(mask: int, m: int) -> set[int]:
    """Descent masks after deleting the maximum from each peak."""
    out = set()
    for p in range(1, m + 1):
        at_peak = p == m or mask >> (p - 1) & 1
        before_desc = p >= 2 and mask >> (p - 2) & 1
        if not at_peak or before_desc:
            continue
        base = (mask & ((1 << max(p - 2, 0)) - 1)) | ((mask >> p) << (p - 1))
        out.add(base)
        if 2 <= p <= m - 1:
            # the two neighbours of the removed cell meet and may form a descent
            out.add(base | 1 << (p - 2))
    return out


def covers(mu: Composition) -> list[Composition]:
    """All compositions one cell above mu, sorted by parts."""
    m = mu.size
    if m == 0:
        return [Composition((1,))]
    return sorted((from_mask(x, m + 1) for x in _up_masks(descent_mask(mu), m)),
                  key=lambda c: c.parts)


def down_covers(lam: Composition) -> list[Composition]:
    n = lam.size
    if n == 0:
        return []
    if n == 1:
        return [EMPTY]
    return sorted((from_mask(x, n - 1) for x in _down_masks(descent_mask(lam), n)),
                  key=lambda c: c.parts)


def _count_rows(flags) -> list[int]:
    """Exact last row of the rank DP: entry j-1 counts fillings whose last cell has rank j."""
    row = [1]
    for i, desc in enumerate(flags, start=1):
        pre = [0, *accumulate(row)]
        if desc:
            row = [pre[i] - pre[j - 1] for j in range(1, i + 2)]
        else:
            row = [pre[j - 1] for j in range(1, i + 2)]
    return row


@lru_cache(maxsize=4096)
def count_fillings(lam: Composition) -> int:
    """Number of permutations whose descent set is that of lam."""
    if lam.size == 0:
        return 1
    return sum(_count_rows(lam.descent_flags))


def path_counts(lam: Composition, k: int) -> dict[Composition, int]:
    """d(mu, lam) for every mu of size k with at least one path to lam."""
    n = lam.size
    if k > n or k < 0:
        return {}
    if k == 0:
        return {EMPTY: count_fillings(lam)}
    frontier = {descent_mask(lam): 1}
    for m in range(n, k, -1):
        nxt: dict[int, int] = defaultdict(int)
        for mask, c in frontier.items():
            for low in _down_masks(mask, m):
                nxt[low] += c
        frontier = nxt
    return {from_mask(mask, k): c for mask, c in frontier.items()}


def count_paths(mu: Composition, lam: Composition) -> int:
    if mu.size > lam.size:
        return 0
    if mu.size == 0:
        return count_fillings(lam)
    return path_counts(lam, mu.size).get(mu, 0)


class KernelValue(NamedTuple):
    """Unreduced ratio paths / total, where total is the filling count of the target."""
    numerator: int
    denominator: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self):
        return self.numerator / self.denominator


def martin_kernel(mu: Composition, lam: Composition) -> KernelValue:
    return KernelValue(count_paths(mu, lam), count_fillings(lam))


def kernel_panel(lam: Composition, k: int) -> dict[Composition, KernelValue]:
    """Exact kernel at lam for every composition of k (zeros included)."""
    counts = path_counts(lam, k)
    total = count_fillings(lam)
    return {mu: KernelValue(counts.get(mu, 0), total) for mu in compositions(k)}


class FillingSampler:
    """Uniform sampler over the fillings of one composition.

    The forward rank DP is kept in floating point, one normalised row per
    prefix length.  A sample draws the rank of the last cell, then walks
    backwards choosing each earlier rank from the admissible slice of its row,
    and decodes values on the way.
    """

    def __init__(self, lam: Composition):
        self.lam = lam
        self.n = n = lam.size
        if n == 0:
            raise ValueError("cannot sample fillings of the empty composition")
        self.flags = lam.descent_flags
        row = np.ones(1)
        self._prefix = []  # _prefix[i-1][j] = mass of ranks 1..j in row i
        self._suffix = []  # _suffix[i-1][m] = mass of the top m ranks in row i
        for i in range(1, n + 1):
            self._prefix.append(np.concatenate(([0.0], np.cumsum(row))))
            self._suffix.append(np.concatenate(([0.0], np.cumsum(row[::-1]))))
            if i == n:
                break
            if self.flags[i - 1]:
                new = self._suffix[-1][i:0:-1]  # rank j gets mass of ranks j..i
                new = np.append(new, 0.0)
            else:
                new = self._prefix[-1][: i + 1]  # rank j gets mass of ranks < j
            row = new / new.sum()

    def _draw_ranks_backward(self, size: int, rng: np.random.Generator):
        """Yield (cell, ranks) from the last cell to the first."""
        n = self.n
        cum = self._prefix[n - 1]
        j = np.searchsorted(cum, rng.random(size) * cum[-1], side="right")
        j = np.clip(j, 1, n)
        yield n, j
        for i in range(n - 1, 0, -1):
            u = rng.random(size)
            if self.flags[i - 1]:
                # descent at i: rank of cell i lies in [j_next, i]
                suf = self._suffix[i - 1]
                top = i - j + 1
                m = np.searchsorted(suf, u * suf[top], side="right")
                m = np.minimum(np.maximum(m, 1), top)
                j = i - m + 1
            else:
                pre = self._prefix[i - 1]
                hi = j - 1
                r = np.searchsorted(pre, u * pre[hi], side="right")
                j = np.minimum(np.maximum(r, 1), hi)
            yield i, j

    def positions_of_smallest(self, size: int, k: int, rng: np.random.Generator) -> np.ndarray:
        """Array pos[s, v-1] = cell holding value v, for v = 1..k."""
        n = self.n
        if not 1 <= k <= n:
            raise ValueError(f"k={k} outside [1, {n}]")
        sentinel = n + 1
        small = np.tile(np.arange(1, k + 1), (size, 1))  # remaining small values, sorted
        left = np.full(size, k)
        pos = np.zeros((size, k), dtype=np.int64)
        cols = np.arange(k)
        rows = np.arange(size)
        for cell, rank in self._draw_ranks_backward(size, rng):
            hit = rank <= left
            if not hit.any():
                continue
            r = rows[hit]
            col = rank[hit] - 1
            val = small[r, col]
            pos[r, val - 1] = cell
            shift = cols[None, :] >= col[:, None]
            idx = np.minimum(cols[None, :] + shift, k - 1)
            moved = np.take_along_axis(small[r], idx, axis=1)
            moved[:, -1] = np.where(shift[:, -1], sentinel, moved[:, -1])
            small[r] = moved
            left[r] -= 1
        return pos

    def words(self, size: int, rng: np.random.Generator) -> np.ndarray:
        pos = self.positions_of_smallest(size, self.n, rng)
        out = np.empty_like(pos)
        vals = np.tile(np.arange(1, self.n + 1), (size, 1))
        np.put_along_axis(out, pos - 1, vals, axis=1)
        return out

    def sample(self, rng: np.random.Generator) -> tuple[int, ...]:
        return tuple(int(x) for x in self.words(1, rng)[0])


@lru_cache(maxsize=256)
def sampler_for(lam: Composition) -> FillingSampler:
    return FillingSampler(lam)


def sample_uniform_filling(lam: Composition, rng: np.random.Generator) -> tuple[int, ...]:
    return sampler_for(lam).sample(rng)


def sample_fillings(lam: Composition, size: int, rng: np.random.Generator) -> np.ndarray:
    return sampler_for(lam).words(size, rng)


def projected_masks(pos: np.ndarray) -> np.ndarray:
    """Descent mask of the projected word, given positions of the values 1..k."""
    order = np.argsort(pos, axis=1) + 1  # values in left-to-right order
    desc = order[:, 1:] < order[:, :-1]
    weights = 1 << np.arange(desc.shape[1], dtype=np.int64)
    return (desc * weights).sum(axis=1)


def projected_descent_law(lam: Composition, k: int, samples: int,
                          rng: np.random.Generator) -> Counter:
    """Counts of the descent mask of the projection to 1..k over uniform fillings."""
    sampler = sampler_for(lam)

    def chunk(size, g):
        return Counter(projected_masks(sampler.positions_of_smallest(size, k, g)).tolist())

    total = Counter()
    for part in map_chunks(chunk, samples, rng):
        total.update(part)
    return total


def estimate_kernel(mu: Composition, lam: Composition, samples: int,
                    rng: np.random.Generator) -> Estimate:
    k = mu.size
    if k > lam.size:
        return Estimate(0.0, 0.0, samples)
    law = projected_descent_law(lam, k, samples, rng)
    return binomial_estimate(law.get(descent_mask(mu), 0), samples, count_fillings(mu))


def check_harmonic(p: Mapping[Composition, object], levels: int, tol: float = 0.0) -> bool:
    """True when p((1)) = 1 and p(mu) = sum of p over the covers of mu below level `levels`."""
    def value(c):
        try:
            return p[c]
        except KeyError:
            raise IncompleteInputError(f"no value given for composition {c}") from None

    if abs(value(Composition((1,))) - 1) > tol:
        return False
    for m in range(1, levels):
        for mu in compositions(m):
            if abs(value(mu) - sum(value(nu) for nu in covers(mu))) > tol:
                return False
    for nu in compositions(levels):
        value(nu)
    return True
