"""Numbered acceptance criteria.

Each test carries `@pytest.mark.acceptance(N)`; the conftest prints one
PASS/FAIL line per criterion at the end of the run.  Run this file alone with
`python tests/test_acceptance.py` or `pytest tests/test_acceptance.py`.
"""
from fractions import Fraction as F
from itertools import permutations
from math import factorial, sqrt

import numpy as np
import pytest
from scipy import stats

from zigzag.composition import (
    Composition,
    compositions,
    fillings,
    project_down,
    random_composition,
    run_decomposition,
    word_descents,
)
from zigzag.chain import (
    overlap_bounds,
    first_cdf,
    prob_one_between,
    prob_one_in_valley,
    prob_one_in_valley_counting,
    run_cdf_bounds,
    seam_runs,
    survival_overlap,
    valley_window_bound,
    volume,
)
from zigzag.experiments import ExperimentConfig, emit, run
from zigzag.graph import count_fillings, covers, down_covers, projected_descent_law
from zigzag.paintbox import (
    IntervalSystem,
    composition_paintbox,
    paintbox_distance,
    run_paintbox,
    sample_averaged_batch,
    paintbox_sort_batch,
    averaged_from_positions,
)
from zigzag.rng import THREADS_ENV, make_rng
from zigzag.rsk import (
    count_syt,
    delete_largest,
    inverse_rsk,
    tableau_pair_terms,
    partitions,
    path_law_by_insertion_tableau,
    rsk,
    standard_tableaux,
    tableau_descents,
    check_tableau_pair_identity,
)
from zigzag.walk import clt_experiment, descent_moments, lln_experiment

from oracles import brute_count, brute_paths, cover_parts, eulerian_brute

C = Composition
SEED = 12345
acceptance = pytest.mark.acceptance


@acceptance(1)
def test_counting_matches_brute_force():
    for n in range(1, 9):
        for lam in compositions(n):
            assert count_fillings(lam) == brute_count(lam.parts), lam


@acceptance(2)
def test_branching_identity():
    for n in range(1, 13):
        for lam in compositions(n):
            below = down_covers(lam)
            # the down-covers must be exactly the compositions one level down that
            # the parts-level rule sends to lam
            assert all(lam.parts in cover_parts(mu.parts) for mu in below)
            assert count_fillings(lam) == sum(count_fillings(mu) for mu in below), lam
    for n in range(0, 8):
        for mu in compositions(n):
            assert {c.parts for c in covers(mu)} == cover_parts(mu.parts)


@acceptance(3)
def test_projected_descent_frequency():
    rng = make_rng(SEED)
    samples = 100_000
    for _ in range(20):
        n = int(rng.integers(2, 13))
        lam = random_composition(n, rng)
        k = int(rng.integers(1, min(n, 5) + 1))
        mu = random_composition(k, rng)
        # independent route: path counts by recursion over the parts-level covers
        p = F(brute_paths((1,), mu.parts) * brute_paths(mu.parts, lam.parts),
              brute_paths((1,), lam.parts))
        law = projected_descent_law(lam, k, samples, rng)
        mask = sum(1 << (d - 1) for d in mu.descents)
        freq = law.get(mask, 0) / samples
        sigma = sqrt(float(p) * (1 - float(p)) / samples)
        assert abs(freq - float(p)) <= 4 * sigma, (lam, mu, freq, float(p))


@acceptance(4)
def test_step_and_run_paintboxes_close():
    rng = make_rng(SEED)
    for _ in range(400):
        n = int(rng.integers(2, 201))
        lam = random_composition(n, rng)
        d = paintbox_distance(composition_paintbox(lam), run_paintbox(lam))
        assert d <= F(1, n), (lam, d)


@acceptance(5)
def test_reconstruction_from_averaged_coordinates():
    rng = make_rng(SEED)
    draws = 100
    for n in range(1, 8):
        for lam in compositions(n):
            u = run_paintbox(lam)
            words = np.array(list(fillings(lam)))
            # cell of value v in each filling
            where = np.argsort(words, axis=1) + 1
            for k in range(1, n + 1):
                pos = np.repeat(where[:, :k], draws, axis=0)
                coords = averaged_from_positions(lam, pos, rng)
                got, bad = paintbox_sort_batch(u, coords)
                assert not bad.any()
                expect = np.array([project_down(tuple(w), k) for w in words.tolist()])
                assert np.array_equal(got, np.repeat(expect, draws, axis=0)), (lam, k)


@acceptance(6)
def test_volume_identity():
    for n in range(1, 11):
        for lam in compositions(n):
            assert factorial(n) * volume(lam) == count_fillings(lam), lam
    for n in range(1, 8):
        for lam in compositions(n):
            assert factorial(n) * volume(lam) == brute_count(lam.parts)


@acceptance(7)
def test_valley_law_two_formulas():
    for n in range(1, 10):
        for lam in compositions(n):
            for v in sorted(run_decomposition(lam).valleys):
                assert prob_one_in_valley(lam, v) == prob_one_in_valley_counting(lam, v), (lam, v)


@acceptance(8)
def test_first_cell_cdf_inside_run_envelope():
    rng = make_rng(SEED)
    done = 0
    while done < 200:
        lam = random_composition(int(rng.integers(3, 15)), rng)
        if len(run_decomposition(lam).runs) < 2:
            continue
        lower, upper = run_cdf_bounds(lam)
        f = first_cdf(lam)
        for t in lower.grid(101):
            assert lower(t) <= f(t) <= upper(t), (lam, t)
        done += 1


@acceptance(9)
def test_survival_overlap_sandwich():
    for total in range(4, 10):
        for a in range(2, total - 1):
            for lam in compositions(a):
                for mu in compositions(total - a):
                    left, right, ldir, rdir = seam_runs(lam, mu)
                    lo, hi = overlap_bounds(left, right, ldir, rdir)
                    exact = survival_overlap(lam, mu)
                    assert lo <= exact <= hi, (lam, mu)


@acceptance(10)
def test_window_bound():
    rng = make_rng(SEED)
    done = 0
    while done < 200:
        lam = random_composition(int(rng.integers(3, 13)), rng)
        peaks = sorted(run_decomposition(lam).peaks)
        if len(peaks) < 2:
            continue
        i, j = sorted(rng.choice(len(peaks), size=2, replace=False))
        a, b = peaks[i], peaks[j]
        exact = prob_one_between(lam, a, b)
        valleys = run_decomposition(lam).valleys
        assert exact == sum((prob_one_in_valley_counting(lam, v) for v in valleys if a < v < b), F(0))
        assert exact <= valley_window_bound(lam, a, b), (lam, a, b)
        done += 1


@acceptance(11)
def test_first_averaged_coordinate_uniform():
    rng = make_rng(SEED)
    worst = 0.0
    for _ in range(20):
        lam = random_composition(500, rng)
        coords, _ = sample_averaged_batch(lam, 1, 10_000, rng)
        worst = max(worst, stats.kstest(coords[:, 0], "uniform").statistic)
    assert worst <= 0.05, worst


@acceptance(12)
@pytest.mark.parametrize("k", [2, 3])
def test_averaged_coordinates_independent_uniform(k):
    cfg = ExperimentConfig(experiment="averaged_uniformity", sequence="random", sizes=[1000],
                           samples=10_000, k=k, seed=SEED, ks_tolerance=0.03,
                           corr_tolerance=0.05)
    report = run(cfg)
    assert len(report.records) == k + k * (k - 1) // 2
    failed = [(r["quantity"], r["value"]) for r in report.records if not r["pass"]]
    assert not failed, failed


@acceptance(13)
def test_zigzag_kernel_trend():
    cfg = ExperimentConfig(experiment="boundary_convergence", sequence="zigzag:2",
                           sizes=[6, 10, 14, 18], panel_max_k=3, tolerance=0.1, seed=SEED)
    report = run(cfg)
    recs = [r for r in report.records if r["quantity"] == "descent_class_probability"]
    assert all(r["provenance"] == "exact" for r in recs)
    # 7 panel members (all compositions of k <= 3) at four sizes
    assert len(recs) == 7 * 4
    for r in recs:
        if r["n"] == 18:
            assert r["error"] <= 0.1, r
    trend = [r for r in report.records if r["quantity"] == "error_nonincreasing"]
    assert len(trend) == 7
    assert all(r["pass"] for r in trend), [r["mu"] for r in trend if not r["pass"]]


@acceptance(13)
def test_scaled_sequence_monte_carlo_agreement():
    cfg = ExperimentConfig(experiment="boundary_convergence", sequence="scaled:3,2,4,1",
                           target_up="0,3/10;3/10,1/2;1/2,9/10;9/10,1",
                           sizes=[50, 200], panel_max_k=3, samples=100_000, sigmas=4, seed=SEED)
    report = run(cfg)
    recs = [r for r in report.records if r["n"] == 200]
    assert recs and all(r["provenance"] == "mc" for r in recs)
    failed = [(r["mu"], r["value"], r["target"]) for r in recs if not r["pass"]]
    assert not failed, failed


@acceptance(14)
def test_rsk_suite():
    for n in range(1, 7):
        seen = set()
        for w in permutations(range(1, n + 1)):
            p, q = rsk(w)
            seen.add((p, q))
            assert inverse_rsk(p, q) == w
            inv = tuple(sorted(range(1, n + 1), key=lambda i: w[i - 1]))
            assert rsk(inv) == (q, p)
            if n > 1:
                assert rsk(project_down(w, n - 1))[0] == delete_largest(p)
            assert tableau_descents(q) == tuple(word_descents(w))
        assert len(seen) == factorial(n)
        assert len(seen) == sum(count_syt(t) ** 2 for t in partitions(n))
    for n in range(1, 11):
        assert sum(count_syt(t) ** 2 for t in partitions(n)) == factorial(n)


@acceptance(15)
def test_tableau_pair_identity():
    for n in range(1, 9):
        for lam in compositions(n):
            assert check_tableau_pair_identity(lam)
            assert sum(tableau_pair_terms(lam).values()) == brute_count(lam.parts)


@acceptance(16)
def test_projected_path_law_depends_on_shape():
    for n in range(1, 8):
        for lam in compositions(n):
            for k in range(1, min(n, 4) + 1):
                law = path_law_by_insertion_tableau(lam, k)
                for tau in partitions(k):
                    vals = {law.get(t, F(0)) for t in standard_tableaux(tau)}
                    assert len(vals) == 1, (lam, k, tau)


@pytest.fixture(scope="module")
def clt_run():
    return clt_experiment(10_000, 10_000, make_rng(SEED))


@acceptance(17)
def test_eulerian_moments_exact():
    for n in range(2, 51):
        mean, var = descent_moments(n)
        assert mean == F(n - 1, 2) and var == F(n + 1, 12)
    for n in range(2, 8):
        row = eulerian_brute(n)
        total = factorial(n)
        assert F(sum(k * c for k, c in row.items()), total) == F(n - 1, 2)


@acceptance(17)
def test_descent_count_normal(clt_run):
    assert clt_run.ks <= 0.02, clt_run.ks


@acceptance(18)
@pytest.mark.parametrize("pair", [(0, 1), (1, 2), (0, 2)])
def test_walk_covariance(clt_run, pair):
    cov, se, target = clt_run.covariance(*pair)
    assert abs(cov - target) <= 3 * se, (cov, target, se)


@acceptance(19)
@pytest.mark.parametrize("up,down", [("", ""), ("0,1/2", "1/2,1"),
                                     ("0,1/4;1/2,3/4", "1/4,1/2")])
def test_lln_profile(up, down):
    res = lln_experiment(IntervalSystem.parse(up, down), 2000, 50, make_rng(SEED))
    assert res.mean <= 0.05, res.mean


DETERMINISM_CONFIGS = [
    dict(experiment="boundary_convergence", sequence="zigzag:2", sizes=[6, 10, 30],
         panel_max_k=2, samples=20_000),
    dict(experiment="averaged_uniformity", sequence="random", sizes=[100], samples=5000, k=2),
    dict(experiment="clt", sizes=[500], samples=2000),
    dict(experiment="lln", target_up="0,1/2", target_down="1/2,1", sizes=[100, 400], samples=10),
]


@acceptance(20)
@pytest.mark.parametrize("spec", DETERMINISM_CONFIGS, ids=lambda d: d["experiment"])
def test_reports_byte_identical(spec, tmp_path, monkeypatch):
    cfg = ExperimentConfig(seed=SEED, **spec)
    blobs = []
    for threads in ("1", "4"):
        monkeypatch.setenv(THREADS_ENV, threads)
        report = run(cfg)
        for fmt in ("json", "csv"):
            path = emit(report, tmp_path / f"{threads}.{fmt}", fmt)
            blobs.append((fmt, path.read_bytes()))
    assert blobs[0] == blobs[2] and blobs[1] == blobs[3]


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
