"""Pairs of interval systems (up, down) in (0,1), their metric, the two
systems attached to a composition, the oriented paintbox permutation and the
averaged coordinates of a uniform filling.
"""
from __future__ import annotations

import bisect
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .composition import Composition, run_decomposition
from .errors import DegenerateSampleError, UndefinedPaintboxError, ZigzagError
from .graph import count_fillings, descent_mask, projected_masks, sampler_for
from .rng import map_chunks
from .stats import Estimate, binomial_estimate

Interval = tuple[Fraction, Fraction]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x).limit_denominator() if isinstance(x, float) else Fraction(x)


@dataclass(frozen=True)
class IntervalSystem:
    """Two families of disjoint open subintervals of (0,1), kept sorted.

    Neighbouring intervals of the same label that touch at an endpoint are
    kept apart: their common endpoint is a point of the complement.
    """
    up: tuple[Interval, ...] = ()
    down: tuple[Interval, ...] = ()

    def __post_init__(self):
        up = tuple(sorted((_as_fraction(a), _as_fraction(b)) for a, b in self.up))
        down = tuple(sorted((_as_fraction(a), _as_fraction(b)) for a, b in self.down))
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "down", down)
        comps = sorted(up + down)
        for a, b in comps:
            if not 0 <= a < b <= 1:
                raise ZigzagError(f"interval ({a}, {b}) is empty or leaves [0, 1]")
        for (a1, b1), (a2, b2) in zip(comps, comps[1:]):
            if a2 < b1:
                raise ZigzagError(f"intervals ({a1}, {b1}) and ({a2}, {b2}) overlap")

    @classmethod
    def empty(cls) -> "IntervalSystem":
        return cls((), ())

    @classmethod
    def parse(cls, up: str = "", down: str = "") -> "IntervalSystem":
        return cls(parse_intervals(up), parse_intervals(down))

    def components(self) -> list[tuple[Fraction, Fraction, bool]]:
        """(left, right, is_up) for every interval, sorted by left endpoint."""
        return sorted([(a, b, True) for a, b in self.up] + [(a, b, False) for a, b in self.down])

    def endpoints(self) -> list[Fraction]:
        return sorted({e for a, b, _ in self.components() for e in (a, b)})

    def to_dict(self) -> dict:
        return {"up": format_intervals(self.up), "down": format_intervals(self.down)}

    def __str__(self):
        return f"up={format_intervals(self.up) or '-'} down={format_intervals(self.down) or '-'}"


def parse_intervals(text: str) -> list[Interval]:
    text = (text or "").strip()
    if not text or text in {"-", "empty"}:
        return []
    out = []
    for chunk in text.split(";"):
        bits = [b for b in chunk.replace("(", "").replace(")", "").split(",") if b.strip()]
        if len(bits) != 2:
            raise ZigzagError(f"cannot parse interval {chunk!r}")
        try:
            out.append((Fraction(bits[0].strip()), Fraction(bits[1].strip())))
        except (ValueError, ZeroDivisionError) as exc:
            raise ZigzagError(f"cannot parse interval {chunk!r}") from exc
    return out


def format_intervals(intervals: Iterable[Interval]) -> str:
    return ";".join(f"{a},{b}" for a, b in intervals)


def _complement(intervals: Sequence[Interval]) -> list[Interval]:
    """Closed components of [0,1] minus a sorted family of disjoint open intervals."""
    out, cursor = [], Fraction(0)
    for a, b in intervals:
        out.append((cursor, a))
        cursor = b
    out.append((cursor, Fraction(1)))
    return out


def _distance_to(x: Fraction, gaps: Sequence[Interval]) -> Fraction:
    """Distance from x to the complement of the open gaps."""
    i = bisect.bisect_right(gaps, (x, Fraction(2))) - 1
    if i >= 0 and gaps[i][0] < x < gaps[i][1]:
        return min(x - gaps[i][0], gaps[i][1] - x)
    return Fraction(0)


def _one_sided(a_gaps: Sequence[Interval], b_gaps: Sequence[Interval]) -> Fraction:
    """sup over points of complement(A) of their distance to complement(B)."""
    a_closed = _complement(a_gaps)
    candidates = [e for c in a_closed for e in c]
    for c, d in b_gaps:
        mid = (c + d) / 2
        if _distance_to(mid, a_gaps) == 0:  # midpoint lies in complement(A)
            candidates.append(mid)
    return max(_distance_to(x, b_gaps) for x in candidates)


def hausdorff_complements(a: Sequence[Interval], b: Sequence[Interval]) -> Fraction:
    a, b = sorted(a), sorted(b)
    return max(_one_sided(a, b), _one_sided(b, a))


def paintbox_distance(u: IntervalSystem, v: IntervalSystem) -> Fraction:
    return max(hausdorff_complements(u.up, v.up), hausdorff_complements(u.down, v.down))


def composition_paintbox(lam: Composition) -> IntervalSystem:
    """Unit steps s = 1..n-1 of width 1/(n-1), labelled down on descents, merged."""
    n = lam.size
    if n < 2:
        raise UndefinedPaintboxError("the step paintbox needs at least two cells")
    up, down = [], []
    s = 1
    while s < n:
        label = lam.is_descent(s)
        t = s
        while t + 1 < n and lam.is_descent(t + 1) == label:
            t += 1
        (down if label else up).append((Fraction(s - 1, n - 1), Fraction(t, n - 1)))
        s = t + 1
    return IntervalSystem(tuple(up), tuple(down))


def run_paintbox(lam: Composition) -> IntervalSystem:
    """One interval per extreme cell, up for valleys and down for peaks."""
    n = lam.size
    runs = run_decomposition(lam)
    ext = runs.extremes
    up, down = [], []
    for a, b in zip(ext, (*ext[1:], n + 1)):
        if a == n:
            b = n + 1
        piece = (Fraction(a - 1, n), Fraction(b - 1, n))
        (up if a in runs.valleys else down).append(piece)
    return IntervalSystem(tuple(up), tuple(down))


class _Layout:
    """Float view of a system for vectorised paintbox sorting."""

    def __init__(self, u: IntervalSystem):
        comps = u.components()
        self.left = np.array([float(a) for a, _, _ in comps])
        self.right = np.array([float(b) for _, b, _ in comps])
        self.sign = np.array([1 if up else -1 for _, _, up in comps], dtype=np.int64)
        self.ends = np.array([float(e) for e in u.endpoints()])


def paintbox_sort_batch(u: IntervalSystem, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Paintbox words for each row of xs, plus a mask of degenerate rows.

    Column i-1 of xs is the coordinate of value i.  A row is degenerate when
    two coordinates tie or one sits on an endpoint of u.
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    size, k = xs.shape
    lay = _Layout(u)
    labels = np.arange(1, k + 1)[None, :]
    if lay.left.size:
        idx = np.searchsorted(lay.left, xs, side="right") - 1
        safe = np.maximum(idx, 0)
        inside = (idx >= 0) & (xs < lay.right[safe])
        primary = np.where(inside, lay.left[safe], xs)
        secondary = np.where(inside, lay.sign[safe] * labels, 0)
        bad = np.isin(xs, lay.ends).any(axis=1)
    else:
        primary, secondary = xs, np.zeros_like(xs, dtype=np.int64)
        bad = np.zeros(size, dtype=bool)
    srt = np.sort(xs, axis=1)
    bad |= (srt[:, 1:] == srt[:, :-1]).any(axis=1)
    order = np.lexsort((secondary, primary), axis=-1)
    return order + 1, bad


def paintbox_sort(u: IntervalSystem, xs: Sequence) -> tuple[int, ...]:
    """The oriented paintbox word for coordinates xs (exact when given Fractions)."""
    xs = [_as_fraction(x) if not isinstance(x, float) else x for x in xs]
    if len(set(xs)) != len(xs):
        raise DegenerateSampleError("tied coordinates")
    comps = u.components()
    lefts = [c[0] for c in comps]
    keys = []
    for i, x in enumerate(xs, 1):
        j = bisect.bisect_right(lefts, x) - 1
        if j >= 0 and x == comps[j][0] or any(x == c[1] for c in comps):
            raise DegenerateSampleError(f"coordinate {x} is an endpoint")
        if j >= 0 and x < comps[j][1]:
            keys.append((comps[j][0], i if comps[j][2] else -i, i))
        else:
            keys.append((x, 0, i))
    return tuple(key[2] for key in sorted(keys))


def paintbox_words(u: IntervalSystem, k: int, size: int, rng: np.random.Generator
                   ) -> tuple[np.ndarray, int]:
    """size paintbox words on k letters from iid uniforms; degenerate draws are redrawn."""
    out = np.empty((size, k), dtype=np.int64)
    todo = np.arange(size)
    redraws = 0
    while todo.size:
        words, bad = paintbox_sort_batch(u, rng.random((todo.size, k)))
        out[todo[~bad]] = words[~bad]
        redraws += int(bad.sum())
        todo = todo[bad]
    return out, redraws


def _word_masks(words: np.ndarray) -> np.ndarray:
    desc = words[:, 1:] < words[:, :-1]
    return (desc * (1 << np.arange(desc.shape[1], dtype=np.int64))).sum(axis=1)


def paintbox_descent_law(u: IntervalSystem, k: int, samples: int, rng: np.random.Generator
                         ) -> tuple[Counter, int]:
    """Counts of descent masks of paintbox words on k letters, and the redraw count."""
    def chunk(size, g):
        words, redraws = paintbox_words(u, k, size, g)
        return Counter(_word_masks(words).tolist()), redraws

    law, redraws = Counter(), 0
    for part, r in map_chunks(chunk, samples, rng):
        law.update(part)
        redraws += r
    return law, redraws


def estimate_paintbox_law(u: IntervalSystem, mu: Composition, samples: int,
                          rng: np.random.Generator) -> Estimate:
    """Probability that the paintbox word on |mu| letters has the descent set of mu."""
    law, _ = paintbox_descent_law(u, mu.size, samples, rng)
    return binomial_estimate(law.get(descent_mask(mu), 0), samples)


class AveragedCoordinates(NamedTuple):
    values: tuple[float, ...]
    boxes: tuple[tuple[Fraction, Fraction], ...]


def slope_boxes(lam: Composition) -> tuple[np.ndarray, np.ndarray]:
    """Float arrays lo[c-1], hi[c-1]: the rescaled slope [(x-1)/n, y/n] of cell c."""
    runs = run_decomposition(lam)
    n = lam.size
    lo = np.array([(x - 1) / n for x, _ in runs.slopes])
    hi = np.array([y / n for _, y in runs.slopes])
    return lo, hi


def exact_slope_box(lam: Composition, cell: int) -> tuple[Fraction, Fraction]:
    x, y = run_decomposition(lam).slope(cell)
    n = lam.size
    return Fraction(x - 1, n), Fraction(y, n)


def averaged_from_positions(lam: Composition, pos: np.ndarray, rng: np.random.Generator
                      ) -> np.ndarray:
    """Averaged coordinates given pos[s, v-1], the cell of value v."""
    lo, hi = slope_boxes(lam)
    a, b = lo[pos - 1], hi[pos - 1]
    return a + rng.random(pos.shape) * (b - a)


def sample_averaged_batch(lam: Composition, k: int, size: int, rng: np.random.Generator
                    ) -> tuple[np.ndarray, np.ndarray]:
    """(coords, positions) for size independent uniform fillings of lam."""
    pos = sampler_for(lam).positions_of_smallest(size, k, rng)
    return averaged_from_positions(lam, pos, rng), pos


def sample_averaged(lam: Composition, k: int, rng: np.random.Generator) -> AveragedCoordinates:
    if not 1 <= k <= lam.size:
        raise ValueError(f"k={k} outside [1, {lam.size}]")
    coords, pos = sample_averaged_batch(lam, k, 1, rng)
    boxes = tuple(exact_slope_box(lam, int(c)) for c in pos[0])
    return AveragedCoordinates(tuple(float(x) for x in coords[0]), boxes)


def reconstruct_projection(lam: Composition, k: int, samples: int, rng: np.random.Generator
                           ) -> tuple[Counter, Counter]:
    """Descent-mask laws of the projected filling and of the run-paintbox word of coords.

    Both come from the same draws, so agreement is a sample-by-sample check as
    well as a check in law.
    """
    u = run_paintbox(lam)
    coords, pos = sample_averaged_batch(lam, k, samples, rng)
    words, bad = paintbox_sort_batch(u, coords)
    direct = Counter(projected_masks(pos).tolist())
    rebuilt = Counter(_word_masks(words[~bad]).tolist())
    return direct, rebuilt


def uniform_paintbox_law(mu: Composition) -> Fraction:
    """Exact law of the descent class of mu under the empty system: d(mu)/k!."""
    return Fraction(count_fillings(mu), factorial(mu.size))
