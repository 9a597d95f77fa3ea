"""Row insertion (RSK), standard Young tableaux, and the projection of
composition paths onto paths in Young's lattice."""
from __future__ import annotations

import bisect
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

import numpy as np

from .composition import Composition, check_permutation, fillings, inverse, word_descents
from .errors import BoundExceededError, InvalidTableauError
from .graph import count_fillings, sampler_for
from .paintbox import IntervalSystem
from .rng import map_chunks
from .stats import Estimate, binomial_estimate

Tableau = tuple[tuple[int, ...], ...]
Partition = tuple[int, ...]

ENUMERATION_BOUND = 9


def shape(t: Tableau) -> Partition:
    return tuple(len(r) for r in t)


def is_standard(t: Tableau) -> bool:
    rows = [list(r) for r in t]
    if any(not r for r in rows) or any(len(a) < len(b) for a, b in zip(rows, rows[1:])):
        return False
    entries = sorted(x for r in rows for x in r)
    if entries != list(range(1, len(entries) + 1)):
        return False
    if any(a >= b for r in rows for a, b in zip(r, r[1:])):
        return False
    return all(upper[j] < lower[j] for upper, lower in zip(rows, rows[1:]) for j in range(len(lower)))


def format_tableau(t: Tableau) -> str:
    return "\n".join(" ".join(f"{x:>2}" for x in row) for row in t) or "(empty)"


def rsk(word: Sequence[int]) -> tuple[Tableau, Tableau]:
    """Insertion and recording tableaux of a permutation word."""
    w = check_permutation(word)
    p: list[list[int]] = []
    q: list[list[int]] = []
    for step, x in enumerate(w, 1):
        r = 0
        while True:
            if r == len(p):
                p.append([x])
                q.append([step])
                break
            row = p[r]
            j = bisect.bisect_right(row, x)
            if j == len(row):
                row.append(x)
                q[r].append(step)
                break
            row[j], x = x, row[j]
            r += 1
    return tuple(map(tuple, p)), tuple(map(tuple, q))


def inverse_rsk(p: Tableau, q: Tableau) -> tuple[int, ...]:
    if shape(p) != shape(q):
        raise InvalidTableauError(f"shapes differ: {shape(p)} vs {shape(q)}")
    if not (is_standard(p) and is_standard(q)):
        raise InvalidTableauError("both tableaux must be standard")
    p = [list(r) for r in p]
    loc = {x: r for r, row in enumerate(q) for x in row}
    n = sum(map(len, p))
    out = [0] * n
    for step in range(n, 0, -1):
        r = loc[step]
        x = p[r].pop()
        for rr in range(r - 1, -1, -1):
            row = p[rr]
            j = bisect.bisect_left(row, x) - 1
            row[j], x = x, row[j]
        out[step - 1] = x
        if not p[r]:
            p.pop()
    return tuple(out)


def delete_largest(t: Tableau) -> Tableau:
    n = sum(map(len, t))
    if n == 0:
        raise InvalidTableauError("cannot delete from the empty tableau")
    rows = [tuple(x for x in row if x != n) for row in t]
    return tuple(r for r in rows if r)


def tableau_descents(q: Tableau) -> tuple[int, ...]:
    """Entries i whose successor i+1 sits in a strictly lower row."""
    row_of = {x: r for r, row in enumerate(q) for x in row}
    n = len(row_of)
    return tuple(i for i in range(1, n) if row_of[i + 1] > row_of[i])


def partitions(n: int, largest: int | None = None) -> Iterator[Partition]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first, *rest)


def hooks(tau: Partition) -> list[int]:
    conj = [sum(1 for r in tau if r > j) for j in range(tau[0])] if tau else []
    return [tau[i] - j - 1 + conj[j] - i for i in range(len(tau)) for j in range(tau[i])]


@lru_cache(maxsize=None)
def count_syt(tau: Partition) -> int:
    """Standard tableaux of shape tau by the hook length formula."""
    tau = tuple(tau)
    if any(a < b for a, b in zip(tau, tau[1:])) or any(p <= 0 for p in tau):
        raise InvalidTableauError(f"not a partition: {tau}")
    n = sum(tau)
    prod = 1
    for h in hooks(tau):
        prod *= h
    return factorial(n) // prod


def standard_tableaux(tau: Partition) -> Iterator[Tableau]:
    """All standard tableaux of shape tau, placing 1..n one corner at a time."""
    n = sum(tau)
    rows: list[list[int]] = [[] for _ in tau]

    def place(k):
        if k > n:
            yield tuple(tuple(r) for r in rows)
            return
        for i, target in enumerate(tau):
            if len(rows[i]) < target and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                yield from place(k + 1)
                rows[i].pop()

    yield from place(1)


def covers_in_young(small: Partition, big: Partition) -> bool:
    """big is small plus one box."""
    if sum(big) != sum(small) + 1:
        return False
    s = list(small) + [0] * (len(big) - len(small))
    return len(big) >= len(small) and sum(b - a for a, b in zip(s, big)) == 1 and all(
        b >= a for a, b in zip(s, big))


def project_path(word: Sequence[int]) -> list[Partition]:
    """Shapes of the insertion tableaux of the projections to 1..k, k = 1..n."""
    w = check_permutation(word)
    p, _ = rsk(w)
    out = []
    while p:
        out.append(shape(p))
        p = delete_largest(p)
    return out[::-1]


@lru_cache(maxsize=None)
def _descent_classes(tau: Partition) -> Counter:
    return Counter(tableau_descents(q) for q in standard_tableaux(tau))


def syt_with_descents(tau: Partition, descents: Sequence[int]) -> int:
    return _descent_classes(tuple(tau))[tuple(descents)]


def tableau_pair_terms(lam: Composition) -> dict[Partition, int]:
    """Per-shape terms f_tau * #{Q of shape tau with the descent set of lam}."""
    n = lam.size
    if n > ENUMERATION_BOUND:
        raise BoundExceededError(f"enumeration limited to size {ENUMERATION_BOUND}, got {n}")
    return {tau: count_syt(tau) * syt_with_descents(tau, lam.descents) for tau in partitions(n)}


def check_tableau_pair_identity(lam: Composition) -> bool:
    return count_fillings(lam) == sum(tableau_pair_terms(lam).values())


def projected_marginal(lam: Composition, k: int, samples: int, rng: np.random.Generator
                       ) -> dict[Partition, Estimate]:
    """Monte Carlo law of the insertion shape of the projection of a uniform filling to 1..k."""
    if not 1 <= k <= lam.size:
        raise ValueError(f"k={k} outside [1, {lam.size}]")

    def chunk(size, g):
        pos = sampler_for(lam).positions_of_smallest(size, k, g)
        small_words = np.argsort(pos, axis=1) + 1
        return Counter(shape(rsk(w)[0]) for w in small_words.tolist())

    law = Counter()
    for part in map_chunks(chunk, samples, rng):
        law.update(part)
    return {tau: binomial_estimate(law.get(tau, 0), samples) for tau in partitions(k)}


def skew_count(small: Partition, big: Partition) -> int:
    """Number of saturated chains from small up to big in Young's lattice."""
    @lru_cache(maxsize=None)
    def up(p: Partition) -> int:
        if p == big:
            return 1
        if sum(p) >= sum(big):
            return 0
        total = 0
        ext = list(p) + [0]
        for i in range(len(ext)):
            if (i < len(big) and ext[i] < big[i]) and (i == 0 or ext[i - 1] > ext[i]):
                nxt = ext[:]
                nxt[i] += 1
                total += up(tuple(x for x in nxt if x))
        return total

    return up(tuple(small))


def exact_projected_marginal(lam: Composition, k: int) -> dict[Partition, Fraction]:
    """Exact law of the projected insertion shape, by enumerating fillings."""
    law = Counter()
    total = 0
    for w in fillings(lam):
        law[shape(rsk([x for x in w if x <= k])[0])] += 1
        total += 1
    return {tau: Fraction(law.get(tau, 0), total) for tau in partitions(k)}


def young_kernel_mixture(lam: Composition, k: int) -> dict[Partition, Fraction]:
    """Projected shape law via the shape of the recording tableau of the filling.

    With rho distributed as the recording shape of a uniform filling, the shape
    at level k is tau with probability E[f_tau * d(tau, rho) / f_rho].
    """
    rho_law = Counter(shape(rsk(w)[1]) for w in fillings(lam))
    total = sum(rho_law.values())
    out = {}
    for tau in partitions(k):
        acc = Fraction(0)
        for rho, c in rho_law.items():
            acc += Fraction(c, total) * Fraction(count_syt(tau) * skew_count(tau, rho), count_syt(rho))
        out[tau] = acc
    return out


def path_law_by_insertion_tableau(lam: Composition, k: int) -> dict[Tableau, Fraction]:
    """Probability of each insertion tableau of the projection to 1..k.

    A tableau fixes the projected shape path, so this is the law of the
    projected path over the first k levels.
    """
    law = Counter()
    total = 0
    for w in fillings(lam):
        law[rsk([x for x in w if x <= k])[0]] += 1
        total += 1
    return {t: Fraction(c, total) for t, c in law.items()}


def young_boundary_point(u: IntervalSystem) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Decreasing lengths of the up components and of the down components."""
    ups = tuple(sorted((b - a for a, b in u.up), reverse=True))
    downs = tuple(sorted((b - a for a, b in u.down), reverse=True))
    return ups, downs


def inverse_word(word: Sequence[int]) -> tuple[int, ...]:
    return inverse(check_permutation(word))


def word_descent_set(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(word_descents(word))

