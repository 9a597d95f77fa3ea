"""Exact polynomial laws of the first and last cell of a filling, read as a
chain of uniform reals with a prescribed up/down pattern.

Run: python demos/03_endpoint_laws.py
"""
from fractions import Fraction
from math import factorial

from zigzag import Composition
from zigzag.chain import (
    first_cdf,
    last_cdf,
    prob_one_in_valley,
    prob_one_in_valley_counting,
    run_cdf_bounds,
    volume,
)
from zigzag.graph import count_fillings
from zigzag.composition import run_decomposition

lam = Composition.parse("3,2,4,1")
v = volume(lam)
print(f"volume of {lam}: {v}; n! * volume = {factorial(lam.size) * v}, count = {count_fillings(lam)}")
print("CDF of the first cell:", first_cdf(lam))
print("CDF of the last cell: ", last_cdf(lam))

print("\nwhere does the value 1 go?")
for cell in sorted(run_decomposition(lam).valleys):
    p = prob_one_in_valley(lam, cell)
    q = prob_one_in_valley_counting(lam, cell)
    print(f"  valley {cell:>2}: {str(p):>12}  (counting: {q})")

lower, upper = run_cdf_bounds(lam)
t = Fraction(1, 3)
print(f"\nfirst-cell CDF at 1/3: {float(lower(t)):.4f} <= {float(first_cdf(lam)(t)):.4f} <= {float(upper(t)):.4f}")
