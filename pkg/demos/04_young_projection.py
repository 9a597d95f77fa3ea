"""Row insertion and the shadow of a uniform filling on Young's lattice.

Run: python demos/04_young_projection.py
"""
from zigzag import Composition
from zigzag.rsk import exact_projected_marginal, format_tableau, project_path, projected_marginal, rsk, check_tableau_pair_identity
from zigzag.rng import make_rng

word = (3, 5, 8, 4, 7, 1, 6, 9, 10, 2)
p, q = rsk(word)
print("insertion tableau:\n" + format_tableau(p))
print("recording tableau:\n" + format_tableau(q))
print("shape path:", " -> ".join("".join(map(str, s)) for s in project_path(word)))

lam = Composition.parse("2,2,3")
print(f"\nfilling count of {lam} matches the tableau identity: {check_tableau_pair_identity(lam)}")
exact = exact_projected_marginal(lam, 3)
est = projected_marginal(lam, 3, 100_000, make_rng(3))
print("shape of the projection to 1..3:")
for tau, pr in exact.items():
    print(f"  {tau}: exact {float(pr):.4f}  estimate {est[tau].estimate:.4f}")
