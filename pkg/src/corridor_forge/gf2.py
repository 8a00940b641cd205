"""GF(2) boundary matrices and reduced Betti numbers.

Matrices are stored as one Python int bitmask per row; elimination is
word-level XOR. Homology is reduced: dimension 0 is augmented by the
empty face, so a single simplex has all reduced Betti numbers zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import Face, SimplicialComplex, k_faces
from .errors import InvalidFace


@dataclass
class Gf2Matrix:
    rows: int
    cols: int
    bits: list[int]  # one bitmask per row, column j is bit j

    def __post_init__(self):
        assert len(self.bits) == self.rows


def rank_gf2(m: Gf2Matrix) -> int:
    """Rank over GF(2) by Gaussian elimination on row bitmasks."""
    work = [b for b in m.bits if b]
    rank = 0
    while work:
        pivot_row = work.pop()
        pivot_bit = pivot_row & -pivot_row
        rank += 1
        work = [
            (r ^ pivot_row) if (r & pivot_bit) else r for r in work
        ]
        work = [r for r in work if r]
    return rank


def matmul_gf2(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    """Product a @ b over GF(2)."""
    assert a.cols == b.rows
    out = []
    for row in a.bits:
        acc = 0
        r = row
        while r:
            j = (r & -r).bit_length() - 1
            acc ^= b.bits[j]
            r &= r - 1
        out.append(acc)
    return Gf2Matrix(rows=a.rows, cols=b.cols, bits=out)


def boundary_matrix(X: SimplicialComplex, k: int) -> Gf2Matrix:
    """The k-th boundary matrix: column per k-face, row per (k-1)-face.

    At k = 0 this is the augmentation map to the empty face (a single
    all-ones row over the vertices).
    """
    faces_k = sorted(k_faces(X, k))
    if k == 0:
        return Gf2Matrix(rows=1, cols=len(faces_k), bits=[(1 << len(faces_k)) - 1])
    faces_low = sorted(k_faces(X, k - 1))
    row_of = {f: i for i, f in enumerate(faces_low)}
    bits = [0] * len(faces_low)
    for j, f in enumerate(faces_k):
        for sub in combinations(f, k):
            bits[row_of[sub]] |= 1 << j
    return Gf2Matrix(rows=len(faces_low), cols=len(faces_k), bits=bits)


@dataclass
class ChainComplexRep:
    """Ordered face lists and boundary matrices of a complex."""

    faces: dict[int, list[Face]]
    boundaries: dict[int, Gf2Matrix]

    def composition_is_zero(self) -> bool:
        """Check d_{k-1} @ d_k = 0 for all consecutive pairs."""
        dims = sorted(self.boundaries)
        for k in dims:
            if k - 1 not in self.boundaries:
                continue
            prod = matmul_gf2(self.boundaries[k - 1], self.boundaries[k])
            if any(prod.bits):
                return False
        return True


def chain_complex(X: SimplicialComplex) -> ChainComplexRep:
    d = X.dim
    faces = {k: sorted(k_faces(X, k)) for k in range(d + 1)}
    boundaries = {k: boundary_matrix(X, k) for k in range(d + 1)}
    return ChainComplexRep(faces=faces, boundaries=boundaries)


def reduced_betti(X: SimplicialComplex, k: int) -> int:
    """dim ker d_k - rank d_{k+1} over GF(2), with augmentation at k = 0."""
    num_k = len(k_faces(X, k))
    if num_k == 0:
        return 0
    rank_k = rank_gf2(boundary_matrix(X, k))
    rank_up = rank_gf2(boundary_matrix(X, k + 1))
    return num_k - rank_k - rank_up


@dataclass(frozen=True)
class LemmaCheck:
    applicable: bool
    holds: bool


def check_small_facet_lemma(X: SimplicialComplex, d: int) -> LemmaCheck:
    """Few-facet homology vanishing: a complex of dimension at most d with
    at most d facets has trivial reduced homology in dimension d - 1.

    Returns holds=True vacuously (applicable=False) when the hypothesis
    fails.
    """
    if X.dim > d or len(X.facets) > d:
        return LemmaCheck(applicable=False, holds=True)
    return LemmaCheck(applicable=True, holds=reduced_betti(X, d - 1) == 0)


def tightness_example(d: int) -> SimplicialComplex:
    """A complex with d + 1 facets and nonzero reduced homology in
    dimension d - 1: each (d-1)-face of the central simplex boundary on
    [d+1] is coned to its own fresh apex."""
    from .errors import InvalidParams

    if d < 2:
        raise InvalidParams("need d >= 2")
    center = tuple(range(1, d + 2))
    facets = []
    for apex, base in enumerate(combinations(center, d), start=d + 2):
        facets.append(tuple(sorted(base + (apex,))))
    return SimplicialComplex(n=2 * d + 2, facets=frozenset(facets))


def boundary_of_indicator(
    X: SimplicialComplex, d: int, selected
) -> frozenset[Face]:
    """GF(2) boundary of the indicator chain of a set of d-faces: the
    (d-1)-faces hit an odd number of times."""
    all_d = k_faces(X, d)
    chain: set[Face] = set()
    for f in selected:
        face = tuple(sorted(f))
        if face not in all_d:
            raise InvalidFace(f"{face} is not a {d}-face of the complex")
        for sub in combinations(face, d):
            chain.symmetric_difference_update({sub})
    return frozenset(chain)
