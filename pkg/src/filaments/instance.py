"""Weighted filament instances and the solver-facing index.

An :class:`Instance` couples filaments with weights and an intersection
source. The source is geometric by default (curve predicates from
:mod:`filaments.geometry`); an explicit symmetric adjacency matrix overrides
it, which is how purely abstract instances (intervals plus a matrix) are
expressed; a pair-test callback supports derived instances whose intersection
structure is computed lazily.

:func:`build_index` prepares an instance for the solvers: a zero-weight
sentinel filament that spans everything is given index 1, the real filaments
are ordered by left endpoint, and for every index the first index whose left
endpoint clears its right endpoint is precomputed by a right-to-left sweep.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from .geometry import (Filament, Rational, SemicircleFilament,
                       filaments_intersect)

Weight = Union[int, float]

SENTINEL = 1  # index of the implicit all-enclosing zero-weight filament


class InstanceError(ValueError):
    """Structurally malformed instance."""


@dataclass(frozen=True)
class AbstractFilament:
    """Interval-only filament whose intersections come from a matrix."""

    left: Rational
    right: Rational


AnyFilament = Union[Filament, AbstractFilament, "UnionLike"]


class UnionLike:
    """Marker base for derived filaments resolved through a pair test."""

    left: Rational
    right: Rational


@dataclass(frozen=True)
class Instance:
    filaments: tuple[AnyFilament, ...]
    weights: tuple[Weight, ...]
    adjacency: tuple[tuple[bool, ...], ...] | None = None
    pair_test: Callable[[int, int], bool] | None = field(
        default=None, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.filaments)
        if len(self.weights) != n:
            raise InstanceError(
                f"{len(self.weights)} weights for {n} filaments")
        for w in self.weights:
            if not isinstance(w, (int, float)):
                raise InstanceError(f"weight {w!r} is not an int or float")
        if self.adjacency is not None:
            m = self.adjacency
            if len(m) != n or any(len(row) != n for row in m):
                raise InstanceError("adjacency dimension mismatch")
            for i in range(n):
                if not m[i][i]:
                    raise InstanceError(f"adjacency diagonal false at {i}")
                for j in range(i):
                    if m[i][j] != m[j][i]:
                        raise InstanceError(f"adjacency asymmetric at ({i},{j})")
        elif self.pair_test is None:
            for i, f in enumerate(self.filaments):
                if isinstance(f, AbstractFilament):
                    raise InstanceError(
                        f"abstract filament {i} requires an adjacency matrix")

    @property
    def size(self) -> int:
        return len(self.filaments)

    @property
    def float_mode(self) -> bool:
        return any(isinstance(w, float) for w in self.weights)

    def intersects_positions(self, i: int, j: int) -> bool:
        """Pairwise intersection between 0-based filament positions."""
        if self.adjacency is not None:
            return self.adjacency[i][j]
        if self.pair_test is not None:
            return True if i == j else self.pair_test(i, j)
        if i == j:
            return True
        return filaments_intersect(self.filaments[i], self.filaments[j])

    def intersection_matrix(self) -> list[list[bool]]:
        n = self.size
        mat = [[True] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                mat[i][j] = mat[j][i] = self.intersects_positions(i, j)
        return mat


def make_semicircle_instance(spans: Sequence[tuple[Rational, Rational]],
                             weights: Sequence[Weight] | None = None) -> Instance:
    """Convenience constructor for all-semicircle instances (unit weights by default)."""
    fils = tuple(SemicircleFilament(lo, hi) for lo, hi in spans)
    if weights is None:
        weights = [1] * len(fils)
    return Instance(fils, tuple(weights))


@dataclass(frozen=True)
class IndexedInstance:
    """Instance prepared for the solvers; immutable, safe for concurrent reads.

    Indices run 1..size with the sentinel at index 1; position arrays are
    padded so they can be addressed by index directly (slots 0 and 1 unused).
    ``after_`` maps each index to the first index whose left endpoint lies
    strictly right of its right endpoint, or size+1 when none does.
    """

    instance: Instance
    size: int                      # filament count including the sentinel
    order: tuple[int, ...]         # order[i] = 0-based original position, i >= 2
    after_: tuple[int, ...]
    lefts: tuple[Rational, ...]
    rights: tuple[Rational, ...]

    def original(self, i: int) -> int:
        """0-based position in the underlying instance for index i >= 2."""
        return self.order[i]

    def weight(self, i: int) -> Weight:
        return 0 if i == SENTINEL else self.instance.weights[self.order[i]]

    def intersects(self, i: int, j: int) -> bool:
        """Symmetric intersection between indices; the sentinel meets nothing."""
        if not (1 <= i <= self.size and 1 <= j <= self.size):
            raise IndexError(f"index out of range: ({i},{j}) with size {self.size}")
        if i == SENTINEL or j == SENTINEL:
            return False
        return self.instance.intersects_positions(self.order[i], self.order[j])

    def strictly_under(self, x: int, y: int) -> bool:
        """True iff x nests strictly inside y's span and the curves are disjoint.

        Every non-sentinel filament is strictly under the sentinel; nothing is
        strictly under a non-sentinel filament unless both endpoint
        comparisons are strict.
        """
        if not (1 <= x <= self.size and 1 <= y <= self.size):
            raise IndexError(f"index out of range: ({x},{y}) with size {self.size}")
        if x == SENTINEL:
            return False
        if y == SENTINEL:
            return True
        return (self.lefts[y] < self.lefts[x] and self.rights[x] < self.rights[y]
                and not self.intersects(x, y))


def build_index(inst: Instance) -> IndexedInstance:
    """Sort by left endpoint, prepend the sentinel, and sweep out after().

    Ties among left endpoints keep input order, so equal inputs always index
    identically. The sweep walks right endpoints in decreasing order while a
    cursor retreats over the sorted left endpoints, costing one linear pass
    after the two sorts.
    """
    for p, f in enumerate(inst.filaments):
        if f.left > f.right:
            raise InstanceError(f"filament {p} has left > right")
    n = inst.size
    size = n + 1
    by_left = sorted(range(n), key=lambda p: inst.filaments[p].left)

    pad: tuple = (None, None)
    order = pad + tuple(by_left)
    lefts = pad + tuple(inst.filaments[p].left for p in by_left)
    rights = pad + tuple(inst.filaments[p].right for p in by_left)

    after = [0] * (size + 1)
    after[SENTINEL] = size + 1
    cursor = size
    for i in sorted(range(2, size + 1), key=lambda i: rights[i], reverse=True):
        while cursor >= 2 and lefts[cursor] > rights[i]:
            cursor -= 1
        after[i] = cursor + 1

    return IndexedInstance(instance=inst, size=size, order=order,
                           after_=tuple(after), lefts=lefts, rights=rights)


@dataclass(frozen=True)
class AxiomReport:
    """Violations of the three interval-filament intersection axioms.

    The axioms tie curve intersections to endpoint order: disjoint spans
    never intersect (p1), properly overlapping spans always do (p2), and
    non-intersection propagates inward through a chain of nested
    non-intersecting filaments (p3).
    """

    p1_violations: tuple[tuple[int, int], ...]
    p2_violations: tuple[tuple[int, int], ...]
    p3_violations: tuple[tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return not (self.p1_violations or self.p2_violations
                    or self.p3_violations)


def check_axioms(inst: Instance) -> AxiomReport:
    """Exhaustively test the axioms over all pairs and ordered triples.

    Cubic in the filament count; positions in the reported tuples are
    0-based. Geometric instances satisfy the axioms by construction, so a
    non-empty report there indicates a predicate bug; for matrix instances it
    means the solvers' correctness guarantee does not apply.
    """
    n = inst.size
    lo = [f.left for f in inst.filaments]
    hi = [f.right for f in inst.filaments]
    meets = inst.intersection_matrix()

    p1: list[tuple[int, int]] = []
    p2: list[tuple[int, int]] = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if hi[i] < lo[j]:
                if meets[i][j]:
                    p1.append((i, j))
            elif lo[i] <= lo[j] <= hi[i] <= hi[j]:
                if not meets[i][j] and (j, i) not in p2:
                    p2.append((i, j))

    p3: list[tuple[int, int, int]] = []
    for i in range(n):
        for j in range(n):
            if j == i or not (lo[i] < lo[j] and hi[j] < hi[i]) or meets[i][j]:
                continue
            for k in range(n):
                if k == i or k == j:
                    continue
                if (lo[j] < lo[k] and hi[k] < hi[j] and not meets[j][k]
                        and meets[i][k]):
                    p3.append((i, j, k))

    return AxiomReport(tuple(p1), tuple(p2), tuple(p3))
