"""Interval systems, the oriented paintbox, and rebuilding a projection from
averaged coordinates.

Run: python demos/02_paintbox.py
"""
import numpy as np

from zigzag import Composition
from zigzag.graph import projected_masks
from zigzag.paintbox import (
    IntervalSystem,
    composition_paintbox,
    paintbox_distance,
    run_paintbox,
    sample_averaged_batch,
    paintbox_sort_batch,
)
from zigzag.rng import make_rng

lam = Composition.parse("3,2,4,1")
step, runs = composition_paintbox(lam), run_paintbox(lam)
print("step paintbox:", step)
print("run paintbox: ", runs)
print("distance:", paintbox_distance(step, runs), "<= 1/n =", f"1/{lam.size}")

# sort a few uniforms through a system with one up and one down interval
u = IntervalSystem.parse("0,1/2", "1/2,1")
xs = np.array([[0.1, 0.3, 0.6, 0.9, 0.2]])
print("\nword for", xs[0].tolist(), "->", paintbox_sort_batch(u, xs)[0][0].tolist())

# the run paintbox applied to averaged coordinates returns the projected filling
rng = make_rng(7)
coords, pos = sample_averaged_batch(lam, 4, 10_000, rng)
words, bad = paintbox_sort_batch(runs, coords)
same = np.array_equal(np.argsort(pos, axis=1) + 1, words)
print(f"\nrebuilt 10000 projections to 1..4, all identical: {same}, degenerate draws: {bad.sum()}")
print("distinct descent classes seen:", len(set(projected_masks(pos).tolist())))
