"""Exact polynomial model of a uniform filling as a chain of uniform reals.

Draw x_1..x_n iid uniform on [0,1] and condition on the up/down pattern of the
composition.  The volume of the admissible region times n! is the filling
count, and the endpoint variables X (first cell) and Y (last cell) have
polynomial laws computed here exactly, one cell at a time.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import NamedTuple

from .composition import (
    Composition,
    cells_after,
    cells_before,
    run_decomposition,
)
from .errors import InvalidPeakError, InvalidValleyError, NotApplicableError
from .graph import count_fillings
from .polynomial import ONE, T, PiecewisePolynomial, Poly


@lru_cache(maxsize=2048)
def _last_cell_density(flags: tuple[bool, ...]) -> Poly:
    """Unnormalised density of the last coordinate under the pattern `flags`."""
    f = ONE
    for desc in flags:
        prim = f.antiderivative()
        f = prim(Fraction(1)) - prim if desc else prim
    return f


def _last_cdf(flags: tuple[bool, ...]) -> tuple[Poly, Fraction]:
    f = _last_cell_density(flags)
    prim = f.antiderivative()
    vol = prim(Fraction(1))
    return prim / vol, vol


def _first_flags(flags: tuple[bool, ...]) -> tuple[bool, ...]:
    # reading the chain backwards swaps ascents and descents; with x -> 1 - x
    # that becomes the mirror pattern, so the first cell is the last cell of
    # the reversed complemented pattern
    return tuple(not d for d in reversed(flags))


@lru_cache(maxsize=2048)
def last_cdf(lam: Composition) -> Poly:
    """CDF of the coordinate of the last cell."""
    return _last_cdf(lam.descent_flags)[0]


@lru_cache(maxsize=2048)
def first_cdf(lam: Composition) -> Poly:
    """CDF of the coordinate of the first cell."""
    return _last_cdf(_first_flags(lam.descent_flags))[0]


def volume(lam: Composition) -> Fraction:
    if lam.size == 0:
        return Fraction(1)
    return _last_cdf(lam.descent_flags)[1]


class EndpointLaws(NamedTuple):
    cdf_first: PiecewisePolynomial
    cdf_last: PiecewisePolynomial
    volume: Fraction


def marginal_cdfs(lam: Composition) -> EndpointLaws:
    if lam.size == 0:
        raise ValueError("the empty composition has no endpoint cells")
    return EndpointLaws(PiecewisePolynomial.single(first_cdf(lam)),
                        PiecewisePolynomial.single(last_cdf(lam)), volume(lam))


def prob_last_below_first(lam: Composition, mu: Composition) -> Fraction:
    """P(Y_lam <= X_mu) for independent endpoint variables."""
    fy = last_cdf(lam)
    density_x = first_cdf(mu).derivative()
    return (fy * density_x).integral()


def concat_volume(lam: Composition, mu: Composition, mode: str = "plus") -> Fraction:
    p = prob_last_below_first(lam, mu)
    if mode == "minus":
        p = 1 - p
    elif mode != "plus":
        raise ValueError(f"mode must be 'plus' or 'minus', got {mode!r}")
    return volume(lam) * volume(mu) * p


def survival_overlap(left: Composition, right: Composition) -> Fraction:
    """Integral of (1 - F_last(left)) (1 - F_first(right)); an empty side contributes 1."""
    a = ONE - last_cdf(left) if left.size else ONE
    b = ONE - first_cdf(right) if right.size else ONE
    return (a * b).integral()


def _check_valley(lam: Composition, v: int):
    if v not in run_decomposition(lam).valleys:
        raise InvalidValleyError(f"cell {v} is not a valley of {lam}")


def prob_one_in_valley(lam: Composition, v: int) -> Fraction:
    """Probability that value 1 sits in valley v, from the endpoint laws."""
    _check_valley(lam, v)
    left = cells_before(lam, v, allow_empty=True)
    right = cells_after(lam, v, allow_empty=True)
    return 1 / (lam.size * survival_overlap(left, right))


def prob_one_in_valley_counting(lam: Composition, v: int) -> Fraction:
    """Same probability by counting: choose which values go left of v, fill both sides."""
    _check_valley(lam, v)
    n = lam.size
    left = cells_before(lam, v, allow_empty=True)
    right = cells_after(lam, v, allow_empty=True)
    ways = factorial(n - 1) // (factorial(left.size) * factorial(right.size))
    return Fraction(ways * count_fillings(left) * count_fillings(right), count_fillings(lam))


def first_run(lam: Composition) -> tuple[int, bool]:
    """(length, increasing) of the first run."""
    runs = run_decomposition(lam)
    if not runs.runs:
        raise NotApplicableError(f"{lam} has no runs")
    a, b = runs.runs[0]
    return b - a, runs.is_increasing(0)


def last_run(lam: Composition) -> tuple[int, bool]:
    runs = run_decomposition(lam)
    if not runs.runs:
        raise NotApplicableError(f"{lam} has no runs")
    a, b = runs.runs[-1]
    return b - a, runs.is_increasing(len(runs.runs) - 1)


def run_cdf_bounds(lam: Composition) -> tuple[PiecewisePolynomial, PiecewisePolynomial]:
    """Polynomial envelope of the first-cell CDF, set by the first run alone."""
    if len(run_decomposition(lam).runs) < 2:
        raise NotApplicableError(f"{lam} has fewer than two runs")
    r, up = first_run(lam)
    if up:
        lower, upper = 1 - (1 - T) ** r, 1 - (1 - T) ** (r + 1)
    else:
        lower, upper = T ** (r + 1), T ** r
    return PiecewisePolynomial.single(lower), PiecewisePolynomial.single(upper)


def _beta(a: int, b: int) -> Fraction:
    """Integral of t^(a-1) (1-t)^(b-1) over [0,1]."""
    return Fraction(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))


def overlap_bounds(left_cells: int, right_cells: int, last_dir: str, first_dir: str
                 ) -> tuple[Fraction, Fraction]:
    """Bounds on the survival overlap from the two runs meeting at a valley.

    left_cells counts the cells of the last run on the left, right_cells those
    of the first run on the right; directions are "inc" or "dec".
    """
    L, R = left_cells, right_cells
    if L < 1 or R < 1:
        raise ValueError("run cell counts must be positive")
    key = (last_dir, first_dir)
    if key == ("inc", "inc"):
        return Fraction(1, R + 1) - _beta(L, R + 1), Fraction(1, R) - _beta(L + 1, R)
    if key == ("dec", "dec"):
        return Fraction(1, L + 1) - _beta(R, L + 1), Fraction(1, L) - _beta(R + 1, L)
    if key == ("dec", "inc"):
        return Fraction(1, L + R + 1), Fraction(1, L + R - 1)
    if key == ("inc", "dec"):
        lo = 1 - Fraction(1, R) - Fraction(1, L) + Fraction(1, R + L - 1)
        hi = 1 - Fraction(1, R + 1) - Fraction(1, L + 1) + Fraction(1, L + R + 1)
        return lo, hi
    raise ValueError(f"directions must be 'inc' or 'dec', got {key}")


def seam_runs(lam: Composition, mu: Composition) -> tuple[int, int, str, str]:
    """Cell counts and directions of lam's last run and mu's first run."""
    ll, lup = last_run(lam)
    rl, rup = first_run(mu)
    return ll + 1, rl + 1, "inc" if lup else "dec", "inc" if rup else "dec"


def _check_peak(lam: Composition, p: int):
    if p not in run_decomposition(lam).peaks:
        raise InvalidPeakError(f"cell {p} is not a peak of {lam}")


def valley_window_bound(lam: Composition, a: int, b: int) -> Fraction:
    """Upper bound 2(b-a)/n on the chance that 1 lies strictly between peaks a < b."""
    _check_peak(lam, a)
    _check_peak(lam, b)
    if not a < b:
        raise InvalidPeakError(f"need a < b, got {a}, {b}")
    return Fraction(2 * (b - a), lam.size)


def prob_one_between(lam: Composition, a: int, b: int) -> Fraction:
    """Exact chance that value 1 lies strictly between cells a and b."""
    valleys = run_decomposition(lam).valleys
    return sum((prob_one_in_valley(lam, v) for v in valleys if a < v < b), Fraction(0))


def sup_grid_distance(f: Poly, g: Poly, points: int = 101) -> Fraction:
    return max(abs(f(Fraction(i, points - 1)) - g(Fraction(i, points - 1))) for i in range(points))

