"""Faces, simplicial complexes, straight corridors and their boundaries.

Vertex ids are 1-based positive integers. A face is a strictly increasing
tuple of vertex ids; a complex stores its maximal faces (facets) only and
generates lower-dimensional faces on demand.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import DegenerateFace, InvalidParams

Face = tuple[int, ...]


def make_face(vertices) -> Face:
    """Canonicalize a vertex list into a sorted face tuple.

    Raises DegenerateFace on repeated vertices and InvalidParams on an
    empty list or non-positive ids.
    """
    vs = tuple(sorted(vertices))
    if not vs:
        raise InvalidParams("a face needs at least one vertex")
    if vs[0] < 1:
        raise InvalidParams(f"vertex ids must be positive, got {vs[0]}")
    if any(a == b for a, b in zip(vs, vs[1:])):
        raise DegenerateFace(f"repeated vertex in {vertices}")
    return vs


def face_dim(f: Face) -> int:
    return len(f) - 1


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its facets over the vertex set [n]."""

    n: int
    facets: frozenset[Face]

    @property
    def dim(self) -> int:
        return max(face_dim(f) for f in self.facets)

    def is_pure(self, d: int) -> bool:
        return all(face_dim(f) == d for f in self.facets)

    def sorted_facets(self) -> list[Face]:
        return sorted(self.facets)


def complex_from_facets(faces, n: int | None = None) -> SimplicialComplex:
    """Build a complex from candidate facets, dropping dominated ones."""
    canon = {make_face(f) for f in faces}
    if not canon:
        raise InvalidParams("a complex needs at least one facet")
    maximal = {
        f
        for f in canon
        if not any(f != g and set(f) <= set(g) for g in canon)
    }
    top = max(v for f in maximal for v in f)
    if n is None:
        n = top
    elif top > n:
        raise InvalidParams(f"vertex {top} exceeds bound n={n}")
    return SimplicialComplex(n=n, facets=frozenset(maximal))


def k_faces(X: SimplicialComplex, k: int) -> set[Face]:
    """All k-dimensional faces of X (deduplicated subsets of facets)."""
    if k < 0:
        raise InvalidParams("k must be nonnegative")
    out: set[Face] = set()
    for facet in X.facets:
        if len(facet) >= k + 1:
            out.update(combinations(facet, k + 1))
    return out


def f_vector(X: SimplicialComplex) -> list[int]:
    """Face counts by dimension, entry k = number of k-faces."""
    return [len(k_faces(X, k)) for k in range(X.dim + 1)]


def straight_corridor(d: int, N: int) -> SimplicialComplex:
    """The d-dimensional straight corridor on [N].

    Facets are the N - d windows of d + 1 consecutive integers.
    """
    if d < 1:
        raise InvalidParams("dimension must be at least 1")
    if N < d + 1:
        raise InvalidParams(f"need N >= d + 1, got N={N}, d={d}")
    facets = [tuple(range(k, k + d + 1)) for k in range(1, N - d + 1)]
    return SimplicialComplex(n=N, facets=frozenset(facets))


def boundary_corridor(d: int, N: int) -> SimplicialComplex:
    """The boundary of the (d+1)-dimensional straight corridor on [N].

    Facets are the d-faces of SC_{d+1}(N) lying in exactly one
    (d+1)-facet, found by multiplicity counting; topologically a d-sphere.
    """
    if N < d + 2:
        raise InvalidParams(f"need N >= d + 2, got N={N}, d={d}")
    corridor = straight_corridor(d + 1, N)
    mult: Counter[Face] = Counter()
    for facet in corridor.facets:
        mult.update(combinations(facet, d + 1))
    boundary = [f for f, c in mult.items() if c == 1]
    return SimplicialComplex(n=N, facets=frozenset(boundary))


def corridor_face_count(D: int, N: int, k: int) -> int:
    """Number of codimension-k faces of SC_D(N), in closed form."""
    if N < D + 1:
        raise InvalidParams(f"need N >= D + 1, got N={N}, D={D}")
    if not 1 <= k <= D + 1:
        raise InvalidParams(f"codimension k={k} out of range 1..{D + 1}")
    return comb(D, D - k + 1) + (N - D) * comb(D, k)


def is_pseudomanifold(X: SimplicialComplex, d: int) -> bool:
    """True iff X is pure d-dimensional and every (d-1)-face lies in
    exactly two d-faces."""
    if not X.is_pure(d):
        return False
    mult: Counter[Face] = Counter()
    for facet in X.facets:
        mult.update(combinations(facet, d))
    return all(c == 2 for c in mult.values())


def codim2_skeleton(window: Face) -> SimplicialComplex:
    """The codimension-2 skeleton of the simplex on a d+1 vertex window,
    i.e. the complex of all (d-1)-subsets."""
    w = make_face(window)
    if len(w) < 3:
        raise InvalidParams("window needs at least 3 vertices")
    return SimplicialComplex(
        n=max(w), facets=frozenset(combinations(w, len(w) - 2))
    )


def boundary_complex_of_simplex(f) -> SimplicialComplex:
    """The boundary of the simplex on f: all subsets of one fewer vertex."""
    face = make_face(f)
    if len(face) < 2:
        raise InvalidParams("boundary needs a face with at least 2 vertices")
    return SimplicialComplex(
        n=max(face), facets=frozenset(combinations(face, len(face) - 1))
    )
