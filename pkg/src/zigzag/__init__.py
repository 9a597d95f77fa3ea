"""Exact counting and sampling on the graded graph of compositions."""

__version__ = "0.1.0"

from .composition import (  # noqa: E402
    Composition,
    composition_from_descents,
    concat,
    permutation_descents,
    project_down,
    restrict,
    run_decomposition,
)
from .graph import (  # noqa: E402
    check_harmonic,
    count_fillings,
    count_paths,
    covers,
    estimate_kernel,
    martin_kernel,
    sample_uniform_filling,
)
from .paintbox import (  # noqa: E402
    IntervalSystem,
    composition_paintbox,
    estimate_paintbox_law,
    paintbox_distance,
    paintbox_sort,
    run_paintbox,
    sample_averaged,
)

__all__ = [
    "Composition", "IntervalSystem", "check_harmonic", "composition_from_descents",
    "composition_paintbox", "concat", "count_fillings", "count_paths", "covers",
    "estimate_kernel", "estimate_paintbox_law", "martin_kernel", "paintbox_distance",
    "permutation_descents", "project_down", "restrict", "run_decomposition", "run_paintbox",
    "sample_uniform_filling", "sample_averaged", "paintbox_sort",
]
