"""The descent walk: a law of large numbers toward the profile of an interval
system, and Gaussian fluctuations for uniform permutations.

Run: python demos/05_descent_walk.py
"""
from zigzag.paintbox import IntervalSystem
from zigzag.rng import make_rng
from zigzag.walk import clt_experiment, descent_moments, descent_walk, lln_experiment

print("walk of 3,5,8,4,7,1,6,9,10,2:", descent_walk((3, 5, 8, 4, 7, 1, 6, 9, 10, 2)))
mean, var = descent_moments(20)
print(f"descents of a uniform permutation of 20: mean {mean}, variance {var}")

u = IntervalSystem.parse("0,1/4;1/2,3/4", "1/4,1/2")
for n in (100, 500, 2000):
    res = lln_experiment(u, n, 30, make_rng(n))
    print(f"n={n:>5}: mean sup distance to the profile {res.mean:.4f}")

res = clt_experiment(10_000, 10_000, make_rng(11))
print(f"\nKS distance of the standardized descent count to N(0, 1/12): {res.ks:.4f}")
for i, j in ((0, 1), (1, 2), (0, 2)):
    cov, se, target = res.covariance(i, j)
    print(f"cov at {res.times[i]}, {res.times[j]}: {cov:.4f} +- {se:.4f} (target {target:.4f})")
