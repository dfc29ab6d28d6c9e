"""Quadratic dynamic program for maximum-weight independent sets.

The solver works on an :class:`~filaments.instance.IndexedInstance`. Each
table cell ``(anchor, cand)`` holds the best weight of an independent set
drawn from filaments strictly under ``anchor`` with index at least ``cand``;
the answer for the whole instance is the cell anchored at the sentinel with
the first real filament as candidate. A cell is resolved one of four ways:

* BASE -- no candidates remain (``cand == size + 1``), weight 0.
* SKIP -- the candidate is not strictly under the anchor, so it is not
  eligible here at all; defer to the next candidate.
* EXCLUDE -- eligible but left out; defer to the next candidate.
* INCLUDE -- taken: its weight plus the best set strictly under it plus the
  best continuation among candidates starting clear to its right.

Candidates are filled in decreasing order so every dependency is already
resolved; the full triangular table costs quadratic time and space. Ties
between INCLUDE and EXCLUDE resolve to EXCLUDE, so reported optima are
minimal deterministically.

Weights are exact signed 64-bit integers by default (overflow raises, never
wraps); instances with any float weight run in float mode, which is subject
to rounding and uses a small tolerance in the certificate checks.
"""

from __future__ import annotations

import math
import sys
from array import array
from dataclasses import dataclass
from typing import Iterable

from .geometry import SemicircleFilament
from .instance import SENTINEL, IndexedInstance, Instance, Weight

BASE, SKIP, EXCLUDE, INCLUDE = 0, 1, 2, 3
CHOICE_NAMES = ("BASE", "SKIP", "EXCLUDE", "INCLUDE")

DEFAULT_MEMORY_BUDGET = 4 * 2**30


class MemoryBudgetError(MemoryError):
    def __init__(self, required: int, budget: int, detail: str = ""):
        self.required = required
        self.budget = budget
        super().__init__(
            f"table needs ~{required} bytes, budget is {budget}"
            + (f" ({detail})" if detail else ""))


class WeightOverflowError(OverflowError):
    """A weight or partial sum left the signed 64-bit range."""


class CertificateError(RuntimeError):
    """A produced solution failed its own validity check."""


@dataclass(frozen=True)
class Solution:
    weight: Weight
    members: frozenset[int]  # 0-based positions in the original instance


class DPTable:
    """Filled solver table: values, per-cell choices, and a state counter."""

    __slots__ = ("size", "evaluated_states", "float_mode", "_values", "_choices")

    def __init__(self, size: int, evaluated_states: int, float_mode: bool,
                 values, choices):
        self.size = size
        self.evaluated_states = evaluated_states
        self.float_mode = float_mode
        self._values = values
        self._choices = choices

    def _check(self, anchor: int, cand: int) -> None:
        if not (1 <= anchor < cand <= self.size + 1):
            raise ValueError(f"no state ({anchor},{cand}) in a table of size "
                             f"{self.size}")

    def value(self, anchor: int, cand: int) -> Weight:
        self._check(anchor, cand)
        if isinstance(self._values, dict):
            return self._values[(anchor, cand)]
        return self._values[anchor][cand]

    def choice(self, anchor: int, cand: int) -> int:
        self._check(anchor, cand)
        if isinstance(self._choices, dict):
            return self._choices[(anchor, cand)]
        return self._choices[anchor][cand]


def estimated_table_bytes(size: int) -> int:
    """Bytes the full table will take: 8-byte values plus 1-byte choices."""
    return 9 * size * (size + 2)


def state_count(table: DPTable) -> int:
    """States computed while filling; size*(size+1)/2 for the full fill."""
    return table.evaluated_states


def verify_independent_set(inst: Instance, members: Iterable[int]) -> bool:
    """Pairwise non-intersection over 0-based positions."""
    ms = sorted(set(members))
    return all(not inst.intersects_positions(ms[i], ms[j])
               for i in range(len(ms)) for j in range(i + 1, len(ms)))


def _weights_equal(a: Weight, b: Weight, float_mode: bool) -> bool:
    if float_mode:
        return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9)
    return a == b


def solve_mwis(idx: IndexedInstance, *,
               memory_budget: int | None = DEFAULT_MEMORY_BUDGET,
               recursive: bool = False,
               precompute: bool = False) -> tuple[Solution, DPTable]:
    """Solve the indexed instance; returns the solution and the filled table.

    The iterative fill (default) allocates the whole triangular table, which
    must fit in ``memory_budget`` bytes (checked before allocation).
    Intersections are tested on demand; ``precompute=True`` materializes the
    pairwise matrix first, trading quadratic memory for cheaper cell tests
    when the curve predicates are expensive (many-segment polylines). The
    memoized-recursive mode visits only reachable states and exists for
    differential testing on small instances.

    The returned solution is certified before return: members are pairwise
    non-intersecting and their weights sum to the reported optimum.
    """
    if recursive:
        table = _fill_recursive(idx)
    else:
        table = _fill_iterative(idx, memory_budget, precompute)
    solution = reconstruct(idx, table)
    if not verify_independent_set(idx.instance, solution.members):
        raise CertificateError("reconstructed members are not independent")
    return solution, table


def _fill_iterative(idx: IndexedInstance, memory_budget: int | None,
                    precompute: bool = False) -> DPTable:
    size = idx.size
    if memory_budget is not None:
        required = estimated_table_bytes(size)
        if precompute:
            required += 8 * size * size
        if required > memory_budget:
            raise MemoryBudgetError(required, memory_budget,
                                    f"{size - 1} filaments")
    inst = idx.instance
    float_mode = inst.float_mode
    typecode = "d" if float_mode else "q"
    after = idx.after_
    lefts = idx.lefts
    rights = idx.rights
    order = idx.order
    intersects_pos = inst.intersects_positions
    pure_semicircle = (inst.adjacency is None and inst.pair_test is None
                       and all(isinstance(f, SemicircleFilament)
                               for f in inst.filaments))
    matrix = (inst.intersection_matrix()
              if precompute and not pure_semicircle else None)
    if matrix is not None:
        intersects_pos = lambda i, j: matrix[i][j]  # noqa: E731

    try:
        w = array(typecode, [0, 0])
        w.extend(inst.weights[order[i]] for i in range(2, size + 1))
    except OverflowError as exc:
        raise WeightOverflowError("weight outside signed 64-bit range") from exc

    values: list = [None] * (size + 1)
    choices: list = [None] * (size + 1)
    diag: list = [0] * (size + 2)  # diag[c] = best weight strictly under c
    zero_row = array(typecode, [0]) * (size + 2)
    states = 0

    try:
        for anchor in range(size, 0, -1):
            row = zero_row[:]
            ch = bytearray(size + 2)  # BASE everywhere until written
            if anchor == SENTINEL:
                # every real filament sits strictly under the sentinel
                for c in range(size, anchor, -1):
                    nxt = row[c + 1]
                    cand = diag[c] + row[after[c]] + w[c]
                    if cand > nxt:
                        row[c] = cand
                        ch[c] = INCLUDE
                    else:
                        row[c] = nxt
                        ch[c] = EXCLUDE
            elif pure_semicircle:
                # strict span nesting already implies the arcs are disjoint
                al, ar = lefts[anchor], rights[anchor]
                for c in range(size, anchor, -1):
                    nxt = row[c + 1]
                    if al < lefts[c] and rights[c] < ar:
                        cand = diag[c] + row[after[c]] + w[c]
                        if cand > nxt:
                            row[c] = cand
                            ch[c] = INCLUDE
                        else:
                            row[c] = nxt
                            ch[c] = EXCLUDE
                    else:
                        row[c] = nxt
                        ch[c] = SKIP
            else:
                al, ar = lefts[anchor], rights[anchor]
                apos = order[anchor]
                for c in range(size, anchor, -1):
                    nxt = row[c + 1]
                    if (al < lefts[c] and rights[c] < ar
                            and not intersects_pos(order[c], apos)):
                        cand = diag[c] + row[after[c]] + w[c]
                        if cand > nxt:
                            row[c] = cand
                            ch[c] = INCLUDE
                        else:
                            row[c] = nxt
                            ch[c] = EXCLUDE
                    else:
                        row[c] = nxt
                        ch[c] = SKIP
            values[anchor] = row
            choices[anchor] = ch
            diag[anchor] = row[anchor + 1]
            states += size + 1 - anchor
    except OverflowError as exc:
        raise WeightOverflowError("partial sum outside signed 64-bit range") from exc

    return DPTable(size, states, float_mode, values, choices)


def _fill_recursive(idx: IndexedInstance) -> DPTable:
    size = idx.size
    needed = 4 * size + 1000
    if sys.getrecursionlimit() < needed:
        sys.setrecursionlimit(needed)
    memo: dict[tuple[int, int], Weight] = {}
    choice: dict[tuple[int, int], int] = {}
    after = idx.after_
    su = idx.strictly_under
    weight = idx.weight

    def best(anchor: int, cand: int) -> Weight:
        key = (anchor, cand)
        got = memo.get(key)
        if got is not None:
            return got
        if cand == size + 1:
            v, ch = 0, BASE
        elif not su(cand, anchor):
            v, ch = best(anchor, cand + 1), SKIP
        else:
            excl = best(anchor, cand + 1)
            incl = best(cand, cand + 1) + best(anchor, after[cand]) + weight(cand)
            v, ch = (incl, INCLUDE) if incl > excl else (excl, EXCLUDE)
        memo[key] = v
        choice[key] = ch
        return v

    best(SENTINEL, 2)
    return DPTable(size, len(memo), idx.instance.float_mode, memo, choice)


def reconstruct(idx: IndexedInstance, table: DPTable) -> Solution:
    """Re-walk the stored choices from the root state to the chosen members.

    INCLUDE at ``(anchor, cand)`` reports ``cand`` and explores both the
    candidates strictly under it and the candidates clear to its right;
    SKIP and EXCLUDE step to the next candidate. The member weights are
    checked against the root value before returning.
    """
    picked: list[int] = []
    stack: list[tuple[int, int]] = [(SENTINEL, 2)]
    while stack:
        anchor, cand = stack.pop()
        while True:
            ch = table.choice(anchor, cand)
            if ch == BASE:
                break
            if ch == INCLUDE:
                picked.append(cand)
                stack.append((anchor, idx.after_[cand]))
                anchor, cand = cand, cand + 1
            else:
                cand += 1
    total = sum(idx.weight(i) for i in picked)
    optimum = table.value(SENTINEL, 2)
    if not _weights_equal(total, optimum, table.float_mode):
        raise CertificateError(
            f"member weights sum to {total}, table reports {optimum}")
    return Solution(weight=optimum,
                    members=frozenset(idx.original(i) for i in picked))
