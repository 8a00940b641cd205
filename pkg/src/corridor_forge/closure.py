"""Closed-face bookkeeping shared by the two mapping processes.

Faces are stored as integer keys (base-(n+1) digits of the sorted vertex
tuple) so the hot candidate scan hashes small ints instead of tuples.
"""

from __future__ import annotations


def face_key(vs, base: int) -> int:
    key = 0
    for v in vs:
        key = key * base + v
    return key


def merged_key(tau, v: int, base: int) -> int:
    """Key of the sorted face tau + {v}, for tau already sorted."""
    key = 0
    placed = False
    for x in tau:
        if not placed and v < x:
            key = key * base + v
            placed = True
        key = key * base + x
    if not placed:
        key = key * base + v
    return key


def scan_available(
    n: int,
    base: int,
    closed: set[int],
    window: set[int],
    taus: list[tuple[int, ...]],
    recent: set[int],
) -> tuple[int, list[int]]:
    """One pass over [n]: (count of closure-free vertices outside the
    window, sorted choice list additionally excluding recent images)."""
    count = 0
    choice: list[int] = []
    if all(len(tau) == 1 for tau in taus):
        # d = 2: each tau is a single vertex, keys are vertex pairs
        anchors = [tau[0] for tau in taus]
        for v in range(1, n + 1):
            if v in window:
                continue
            ok = True
            for a in anchors:
                key = a * base + v if a < v else v * base + a
                if key in closed:
                    ok = False
                    break
            if ok:
                count += 1
                if v not in recent:
                    choice.append(v)
        return count, choice
    for v in range(1, n + 1):
        if v in window:
            continue
        ok = True
        for tau in taus:
            if merged_key(tau, v, base) in closed:
                ok = False
                break
        if ok:
            count += 1
            if v not in recent:
                choice.append(v)
    return count, choice
