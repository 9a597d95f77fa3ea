"""Compositions, descent sets, ribbon structure and permutation words.

Cells of a composition of n are numbered 1..n.  A composition is stored by its
parts; the descent set (partial sums except the last) is derived lazily.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import cached_property
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

from .errors import (
    EmptyRestrictionError,
    InvalidCompositionError,
    InvalidDescentError,
    InvalidPermutationError,
)


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise InvalidCompositionError(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return self.size

    @cached_property
    def descents(self) -> tuple[int, ...]:
        return tuple(accumulate(self.parts))[:-1]

    @cached_property
    def descent_flags(self) -> tuple[bool, ...]:
        """flags[i-1] is True when cell i is a descent, for i in 1..n-1."""
        flags = [False] * max(self.size - 1, 0)
        for d in self.descents:
            flags[d - 1] = True
        return tuple(flags)

    def is_descent(self, i: int) -> bool:
        return 1 <= i < self.size and self.descent_flags[i - 1]

    @classmethod
    def parse(cls, text: str) -> "Composition":
        text = text.strip().strip("()")
        if not text:
            return cls(())
        try:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        except ValueError as exc:
            raise InvalidCompositionError(f"cannot parse composition {text!r}") from exc

    @classmethod
    def row(cls, n: int) -> "Composition":
        return cls((n,)) if n else cls(())

    @classmethod
    def column(cls, n: int) -> "Composition":
        return cls((1,) * n)

    def __str__(self):
        return ",".join(map(str, self.parts))

    def __repr__(self):
        return f"Composition({str(self) or 'empty'})"


EMPTY = Composition(())


def composition_from_descents(descents: Iterable[int], n: int) -> Composition:
    if n < 0:
        raise InvalidDescentError(f"size must be nonnegative, got {n}")
    ds = sorted(set(int(d) for d in descents))
    if ds and (ds[0] <= 0 or ds[-1] >= n):
        raise InvalidDescentError(f"descents {ds} not inside [1, {n - 1}]")
    if n == 0:
        return EMPTY
    cuts = [0, *ds, n]
    return Composition(tuple(b - a for a, b in zip(cuts, cuts[1:])))


def descent_set(lam: Composition) -> tuple[int, ...]:
    return lam.descents


def compositions(n: int) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n, ordered by descent bitmask."""
    if n == 0:
        yield EMPTY
        return
    for mask in range(1 << (n - 1)):
        yield composition_from_descents([i + 1 for i in range(n - 1) if mask >> i & 1], n)


def random_composition(n: int, rng, p: float = 0.5) -> Composition:
    """Each of the n-1 gaps becomes a descent independently with probability p."""
    if n <= 1:
        return Composition.row(n)
    flags = rng.random(n - 1) < p
    return composition_from_descents([i + 1 for i in range(n - 1) if flags[i]], n)


@dataclass(frozen=True)
class RunDecomposition:
    n: int
    valleys: frozenset
    peaks: frozenset
    runs: tuple[tuple[int, int], ...]
    slopes: tuple[tuple[int, int], ...]  # slopes[i-1] = (x(i), y(i))

    @property
    def extremes(self) -> tuple[int, ...]:
        return tuple(sorted(self.valleys | self.peaks))

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in self.runs)

    def slope(self, i: int) -> tuple[int, int]:
        return self.slopes[i - 1]

    def is_increasing(self, run_index: int) -> bool:
        """A run goes up exactly when it starts at a valley."""
        return self.runs[run_index][0] in self.valleys


def valleys_and_peaks(lam: Composition) -> tuple[list[int], list[int]]:
    n = lam.size
    if n == 1:
        return [1], []
    des = lam.is_descent
    valleys = [i for i in range(1, n + 1) if not des(i) and (i == 1 or des(i - 1))]
    peaks = [i for i in range(1, n + 1) if (des(i) or i == n) and not des(i - 1)]
    return valleys, peaks


def run_decomposition(lam: Composition) -> RunDecomposition:
    n = lam.size
    if n == 0:
        raise InvalidCompositionError("the empty composition has no ribbon structure")
    valleys, peaks = valleys_and_peaks(lam)
    ext = sorted(valleys + peaks)
    runs = tuple(zip(ext, ext[1:]))
    slopes = []
    for i in range(1, n + 1):
        lo = bisect.bisect_left(ext, i)
        hi = bisect.bisect_right(ext, i)
        left = ext[lo - 1] + 1 if lo > 0 else 1
        right = ext[hi] - 1 if hi < len(ext) else n
        slopes.append((left, right))
    return RunDecomposition(n, frozenset(valleys), frozenset(peaks), runs, tuple(slopes))


def concat(lam: Composition, mu: Composition, mode: str = "plus") -> Composition:
    """Glue mu after lam: "plus" puts an ascent at the seam, "minus" a descent."""
    if not lam.parts or not mu.parts:
        raise InvalidCompositionError("concatenation needs two nonempty compositions")
    if mode == "plus":
        return Composition(lam.parts[:-1] + (lam.parts[-1] + mu.parts[0],) + mu.parts[1:])
    if mode == "minus":
        return Composition(lam.parts + mu.parts)
    raise ValueError(f"mode must be 'plus' or 'minus', got {mode!r}")


def restrict(lam: Composition, start: int = 1, stop: int | None = None, *,
             allow_empty: bool = False) -> Composition:
    """Composition induced on the contiguous cells start..stop (inclusive)."""
    n = lam.size
    stop = n if stop is None else stop
    start, stop = max(start, 1), min(stop, n)
    if start > stop:
        if allow_empty:
            return EMPTY
        raise EmptyRestrictionError(f"window [{start}, {stop}] holds no cells of {lam}")
    inside = [d - start + 1 for d in lam.descents if start <= d < stop]
    return composition_from_descents(inside, stop - start + 1)


def cells_before(lam: Composition, i: int, **kw) -> Composition:
    return restrict(lam, 1, i - 1, **kw)


def cells_after(lam: Composition, i: int, **kw) -> Composition:
    return restrict(lam, i + 1, lam.size, **kw)


def cells_upto(lam: Composition, i: int, **kw) -> Composition:
    return restrict(lam, 1, i, **kw)


def cells_between(lam: Composition, a: int, b: int, **kw) -> Composition:
    """Cells strictly between a and b."""
    return restrict(lam, a + 1, b - 1, **kw)


def check_permutation(word: Sequence[int]) -> tuple[int, ...]:
    w = tuple(int(x) for x in word)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise InvalidPermutationError(f"not a permutation of 1..{len(w)}: {w}")
    return w


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip().strip("()")
    try:
        word = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise InvalidPermutationError(f"cannot parse word {text!r}") from exc
    return check_permutation(word)


def format_word(word: Sequence[int]) -> str:
    return ",".join(str(int(x)) for x in word)


def word_descents(word: Sequence[int]) -> list[int]:
    return [i for i in range(1, len(word)) if word[i] < word[i - 1]]


def permutation_descents(word: Sequence[int]) -> Composition:
    w = check_permutation(word)
    return composition_from_descents(word_descents(w), len(w))


def project_down(word: Sequence[int], k: int) -> tuple[int, ...]:
    """Erase letters larger than k, keeping the order of the rest."""
    w = check_permutation(word)
    if not 1 <= k <= len(w):
        raise ValueError(f"k={k} outside [1, {len(w)}]")
    return tuple(x for x in w if x <= k)


def inverse(word: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(word)
    for pos, val in enumerate(word, 1):
        inv[val - 1] = pos
    return tuple(inv)


def fillings(lam: Composition) -> Iterator[tuple[int, ...]]:
    """Enumerate every word whose descent set is that of lam (backtracking)."""
    n = lam.size
    if n == 0:
        yield ()
        return
    flags = lam.descent_flags
    word: list[int] = []
    used = [False] * (n + 1)

    def extend(pos):
        if pos == n:
            yield tuple(word)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            if pos and (v < word[-1]) != flags[pos - 1]:
                continue
            used[v] = True
            word.append(v)
            yield from extend(pos + 1)
            word.pop()
            used[v] = False

    yield from extend(0)
