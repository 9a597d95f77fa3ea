"""Counting fillings, walking the graph of compositions, and the kernel.

Run: python demos/01_counting_and_kernels.py
"""
from zigzag import Composition
from zigzag.graph import count_fillings, covers, estimate_kernel, kernel_panel, martin_kernel
from zigzag.rng import make_rng

lam = Composition.parse("3,2,4,1")
print(f"{lam} has {count_fillings(lam)} standard fillings")

# every composition of size n+1 above (2,1)
print("covers of 2,1:", ", ".join(str(c) for c in covers(Composition.parse("2,1"))))

# the exact kernel panel at level 2: d(mu) K_mu(lam) is a probability law
print("\nexact kernels at level 2:")
for mu, kv in kernel_panel(lam, 2).items():
    print(f"  mu={str(mu):<5} K = {kv.numerator}/{kv.denominator} = {float(kv):.4f}")

# Monte Carlo estimate against the exact value
mu = Composition.parse("1,2")
est = estimate_kernel(mu, lam, 200_000, make_rng(1))
exact = float(martin_kernel(mu, lam))
print(f"\nK_{mu}({lam}): exact {exact:.5f}, estimate {est.estimate:.5f} +- {est.stderr:.5f}")
