"""Shared helpers for the test suite."""

from __future__ import annotations

import random

from corridor_forge.complexes import SimplicialComplex, complex_from_facets


def random_small_complex(rng: random.Random, d: int, max_vertices: int = 12) -> SimplicialComplex:
    """A random complex with at most d facets of dimension at most d on
    at most max_vertices vertices (the few-facet lemma's hypothesis)."""
    num_facets = rng.randint(1, d)
    facets = []
    for _ in range(num_facets):
        size = rng.randint(1, d + 1)
        facets.append(rng.sample(range(1, max_vertices + 1), size))
    return complex_from_facets(facets)
