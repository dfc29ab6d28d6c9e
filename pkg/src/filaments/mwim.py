"""Maximum-weight induced matching via the union-filament reduction.

Every intersecting pair of base filaments becomes one derived filament whose
span is the leftmost left endpoint to the rightmost right endpoint of the
pair. Two derived filaments intersect exactly when their pairs share a member
or any cross pair intersects in the base instance; that rule preserves the
endpoint-order axioms, so independent sets among the derived filaments are
precisely the induced matchings of the base graph and the quadratic solver
applies unchanged. With up to n*(n-1)/2 derived filaments the total cost is
quartic in the base size, and the derived table dominates memory well before
time, hence the pre-allocation budget check.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable

from .geometry import Rational
from .instance import Instance, UnionLike, Weight, build_index, check_axioms
from .mwis import (DEFAULT_MEMORY_BUDGET, CertificateError, DPTable,
                   MemoryBudgetError, estimated_table_bytes, solve_mwis)

Edge = tuple[int, int]


class AxiomWarning(UserWarning):
    """Solving proceeds, but the endpoint-order axioms do not hold."""


@dataclass(frozen=True)
class UnionFilament(UnionLike):
    """Derived filament standing for one intersecting base pair (a < b)."""

    a: int
    b: int
    left: Rational
    right: Rational


@dataclass(frozen=True)
class MatchingSolution:
    weight: Weight
    edges: frozenset[Edge]


def intersecting_pairs(inst: Instance) -> list[Edge]:
    """All edges of the intersection graph as sorted (a, b) pairs, a < b."""
    n = inst.size
    return [(i, j) for i in range(n) for j in range(i + 1, n)
            if inst.intersects_positions(i, j)]


def edge_weight_table(inst: Instance, edges: list[Edge],
                      edge_weights: dict[Edge, Weight] | None) -> list[Weight]:
    """Per-edge weights: the explicit map where given, else vertex-weight sum."""
    explicit: dict[Edge, Weight] = {}
    if edge_weights:
        known = set(edges)
        for (a, b), w in edge_weights.items():
            key = (a, b) if a < b else (b, a)
            if key not in known:
                raise ValueError(f"edge weight for non-edge pair {key}")
            if key in explicit:
                raise ValueError(f"edge weight for {key} given twice")
            explicit[key] = w
    return [explicit.get(e, inst.weights[e[0]] + inst.weights[e[1]])
            for e in edges]


def _check_base(inst: Instance) -> None:
    # Geometric instances satisfy the axioms by construction; only explicit
    # matrices can violate them, and those are the ones worth the cubic check.
    if inst.adjacency is not None and not check_axioms(inst).ok:
        warnings.warn("base instance violates the intersection axioms; "
                      "matching optimality is not guaranteed", AxiomWarning)


def _build_union(inst: Instance, edges: list[Edge],
                 edge_weights: dict[Edge, Weight] | None) -> Instance:
    weights = edge_weight_table(inst, edges, edge_weights)
    fils = [UnionFilament(a, b,
                          min(inst.filaments[a].left, inst.filaments[b].left),
                          max(inst.filaments[a].right, inst.filaments[b].right))
            for a, b in edges]
    ordered = sorted(range(len(fils)),
                     key=lambda k: (fils[k].left, fils[k].right,
                                    fils[k].a, fils[k].b))
    fils = [fils[k] for k in ordered]
    weights = [weights[k] for k in ordered]

    members = tuple((f.a, f.b) for f in fils)
    base_meets = inst.intersects_positions

    def pair_test(i: int, j: int) -> bool:
        a, b = members[i]
        c, d = members[j]
        if a == c or a == d or b == c or b == d:
            return True
        return (base_meets(a, c) or base_meets(a, d)
                or base_meets(b, c) or base_meets(b, d))

    return Instance(tuple(fils), tuple(weights), pair_test=pair_test)


def build_union_instance(inst: Instance,
                         edge_weights: dict[Edge, Weight] | None = None
                         ) -> Instance:
    """Derived instance with one filament per unordered intersecting pair.

    Filaments are ordered by (left, right, smaller member, larger member) so
    equal inputs index identically downstream. Intersections resolve lazily
    through the pair rule; no quadratic matrix is materialized.
    """
    _check_base(inst)
    return _build_union(inst, intersecting_pairs(inst), edge_weights)


def verify_induced_matching(inst: Instance, edges: Iterable[Edge]) -> bool:
    """Whether the edges form an induced matching of the intersection graph.

    Raises if any pair is not an actual edge; returns False when two chosen
    edges share an endpoint or any cross pair intersects.
    """
    chosen = []
    for a, b in edges:
        if a == b or not inst.intersects_positions(a, b):
            raise ValueError(f"({a},{b}) is not an edge of the base graph")
        chosen.append((a, b) if a < b else (b, a))
    for i in range(len(chosen)):
        a, b = chosen[i]
        for j in range(i + 1, len(chosen)):
            c, d = chosen[j]
            if (len({a, b, c, d}) < 4
                    or inst.intersects_positions(a, c)
                    or inst.intersects_positions(a, d)
                    or inst.intersects_positions(b, c)
                    or inst.intersects_positions(b, d)):
                return False
    return True


def solve_mwim(inst: Instance,
               edge_weights: dict[Edge, Weight] | None = None, *,
               memory_budget: int | None = DEFAULT_MEMORY_BUDGET
               ) -> tuple[MatchingSolution, DPTable]:
    """Build the derived instance, solve it, and map members back to edges.

    The derived table size is checked against the budget before anything
    quadratic in the edge count is materialized. The returned matching is
    re-verified against the base instance before return.
    """
    _check_base(inst)
    edges = intersecting_pairs(inst)
    if memory_budget is not None:
        required = estimated_table_bytes(len(edges) + 1)
        if required > memory_budget:
            raise MemoryBudgetError(required, memory_budget,
                                    f"derived instance has {len(edges)} filaments")
    union = _build_union(inst, edges, edge_weights)
    solution, table = solve_mwis(build_index(union),
                                 memory_budget=memory_budget)
    picked = frozenset((union.filaments[p].a, union.filaments[p].b)
                       for p in solution.members)
    if not verify_induced_matching(inst, picked):
        raise CertificateError("derived solution is not an induced matching")
    return MatchingSolution(weight=solution.weight, edges=picked), table
