"""Exhaustive reference solvers used as ground truth in tests.

Both oracles enumerate every subset below a hard size cap and keep the best
valid one, breaking weight ties toward the lexicographically smallest member
tuple. No pruning, no cleverness: their value is that they are obviously
correct.
"""

from __future__ import annotations

from .instance import Instance, Weight
from .mwim import MatchingSolution, edge_weight_table, intersecting_pairs
from .mwis import Solution

MWIS_CAP = 25   # filaments
MWIM_CAP = 20   # edges


class OracleCapError(ValueError):
    """Instance exceeds the enumeration cap."""


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _best_subset(n: int, conflict: list[int], weights: list[Weight]):
    """Max-weight subset of 0..n-1 avoiding all conflict-mask collisions."""
    best_w: Weight = 0
    best_members: tuple[int, ...] = ()
    for mask in range(1 << n):
        rest = mask
        w: Weight = 0
        ok = True
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            if conflict[i] & mask:
                ok = False
                break
            w += weights[i]
            rest ^= low
        if not ok or w < best_w:
            continue
        members = tuple(_bits(mask))
        if w > best_w or members < best_members:
            best_w, best_members = w, members
    return best_w, best_members


def brute_mwis(inst: Instance) -> Solution:
    """Enumerate all filament subsets; keep the best pairwise-disjoint one."""
    n = inst.size
    if n > MWIS_CAP:
        raise OracleCapError(f"{n} filaments exceeds the cap of {MWIS_CAP}")
    conflict = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if inst.intersects_positions(i, j):
                conflict[i] |= 1 << j
                conflict[j] |= 1 << i
    w, members = _best_subset(n, conflict, list(inst.weights))
    return Solution(weight=w, members=frozenset(members))


def brute_mwim(inst: Instance,
               edge_weights: dict[tuple[int, int], Weight] | None = None
               ) -> MatchingSolution:
    """Enumerate all edge subsets; keep the best one forming an induced matching.

    Two edges are compatible when their four endpoints are distinct and no
    cross pair intersects, so induced matchings are exactly the
    conflict-free edge subsets.
    """
    edges = intersecting_pairs(inst)
    if len(edges) > MWIM_CAP:
        raise OracleCapError(f"{len(edges)} edges exceeds the cap of {MWIM_CAP}")
    weights = edge_weight_table(inst, edges, edge_weights)

    m = len(edges)
    conflict = [0] * m
    for e in range(m):
        a, b = edges[e]
        for f in range(e + 1, m):
            c, d = edges[f]
            clash = (len({a, b, c, d}) < 4
                     or inst.intersects_positions(a, c)
                     or inst.intersects_positions(a, d)
                     or inst.intersects_positions(b, c)
                     or inst.intersects_positions(b, d))
            if clash:
                conflict[e] |= 1 << f
                conflict[f] |= 1 << e
    w, chosen = _best_subset(m, conflict, weights)
    return MatchingSolution(weight=w,
                            edges=frozenset(edges[e] for e in chosen))
