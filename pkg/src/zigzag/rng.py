"""Seeded, splittable random generators and chunked Monte Carlo fan-out.

Work is split into fixed-size chunks, each with its own child seed, so results
depend only on the master seed and never on how many threads run the chunks.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

DEFAULT_CHUNK = 20_000
THREADS_ENV = "ZZ_THREADS"


def make_rng(seed=None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def chunk_sizes(total: int, chunk: int = DEFAULT_CHUNK) -> list[int]:
    full, rest = divmod(total, chunk)
    return [chunk] * full + ([rest] if rest else [])


def map_chunks(fn, total: int, rng: np.random.Generator, chunk: int = DEFAULT_CHUNK):
    """Call fn(size, child_rng) for each chunk and return the results in order."""
    sizes = chunk_sizes(total, chunk)
    children = rng.spawn(len(sizes))
    workers = thread_count()
    if workers == 1 or len(sizes) == 1:
        return [fn(s, g) for s, g in zip(sizes, children)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, sizes, children))
