from fractions import Fraction as F
from math import factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zigzag.composition import word_descents
from zigzag.paintbox import IntervalSystem
from zigzag.walk import (
    clt_experiment,
    descent_moments,
    descent_walk,
    eulerian,
    eulerian_row,
    limit_profile,
    lln_experiment,
    walks_from_words,
)

from oracles import eulerian_brute


def test_descent_walk_example():
    assert descent_walk((3, 5, 8, 4, 7, 1, 6, 9, 10, 2)) == (0, 1, 2, 1, 2, 1, 2, 3, 4, 3)
    assert descent_walk((1,)) == (0,)


@given(st.integers(1, 12).flatmap(lambda n: st.permutations(list(range(1, n + 1)))))
def test_walk_endpoint(w):
    f = descent_walk(w)
    n = len(w)
    assert f[-1] == (n - 1) - 2 * len(word_descents(w))
    assert all(abs(a - b) == 1 for a, b in zip(f, f[1:]))
    assert tuple(walks_from_words(np.array([w]))[0]) == f


def test_eulerian_against_brute():
    for n in range(1, 8):
        brute = eulerian_brute(n)
        assert eulerian_row(n) == tuple(brute[k] for k in range(n))
    assert eulerian(4, 1) == 11 and eulerian(3, 1) == 4
    for n in range(1, 40):
        row = eulerian_row(n)
        assert row == row[::-1]
        assert sum(row) == factorial(n)
    assert eulerian(4, 4) == 0 and eulerian(0, 0) == 0


def test_descent_moments():
    for n in range(2, 30):
        mean, var = descent_moments(n)
        assert mean == F(n - 1, 2)
        assert var == F(n + 1, 12)


def test_limit_profile():
    u = IntervalSystem.parse("0,1/2", "1/2,3/4")
    prof = limit_profile(u)
    assert prof.exact(F(1, 2)) == F(1, 2)
    assert prof.exact(F(3, 4)) == F(1, 4)
    assert prof.exact(1) == F(1, 4)
    assert prof(0.25) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        prof.exact(2)


def test_lln_small(rng):
    u = IntervalSystem.parse("0,1/2", "1/2,1")
    res = lln_experiment(u, 400, 20, rng)
    assert res.distances.shape == (20,)
    assert res.max < 0.2


def test_lln_empty_system(rng):
    # iid uniforms: the walk is centred with fluctuations of order 1/sqrt(n)
    res = lln_experiment(IntervalSystem.empty(), 1000, 20, rng)
    assert res.mean < 0.1


def test_clt_small(rng):
    # the statistic lives on a lattice of step 2/sqrt(n), which puts a floor
    # under the KS distance at small n
    res = clt_experiment(2000, 2000, rng)
    assert res.statistic.shape == (2000,)
    assert res.ks < 0.06
    cov, se, target = res.covariance(0, 2)
    assert target == pytest.approx(0.25 / 3)
    assert abs(cov - target) < 5 * se
    with pytest.raises(ValueError):
        clt_experiment(1, 10, rng)
