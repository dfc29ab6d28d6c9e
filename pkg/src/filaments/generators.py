"""Deterministic instance generators.

All randomness flows through an in-repo splitmix64 generator (the published
constants, 64-bit wrapping arithmetic), so a given ``GeneratorSpec``
reproduces the same instance bytes on any platform or implementation; bounded
draws use plain modulo reduction of the raw 64-bit output.

Families:

* ``worstcase``  -- two size-k cliques of mutually crossing arcs, one clique
  nested strictly inside the other; the family that forces the solvers to
  their quadratic/quartic worst case.
* ``random-arcs`` -- semicircles over a random pairing of 2n distinct points.
* ``random-polylines`` -- valid polyline filaments over a random pairing,
  with random interior vertices above the axis.
* ``nested-arcs`` -- n concentric arcs (an edgeless intersection graph).
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import Point, PolylineFilament, SemicircleFilament
from .instance import Instance

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64 stream; ``randint``/``shuffle`` are defined on top of it."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] by modulo reduction."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_u64() % (i + 1)
            items[i], items[j] = items[j], items[i]


@dataclass(frozen=True)
class GeneratorSpec:
    family: str                       # worstcase | random-arcs | random-polylines | nested-arcs
    n: int                            # filament count
    seed: int = 0
    weight_range: tuple[int, int] | None = None
    segments: int = 3                 # random-polylines only


def _weights(rng: SplitMix64, n: int,
             weight_range: tuple[int, int] | None) -> tuple[int, ...]:
    if weight_range is None:
        return (1,) * n
    lo, hi = weight_range
    return tuple(rng.randint(lo, hi) for _ in range(n))


def gen_worstcase(k: int, weights: tuple[int, ...] | None = None) -> Instance:
    """2k arcs: an outer staggered clique over an inner staggered clique.

    Outer arc i spans (2i - 4k, 2i + 2k + 2); inner arc j spans
    (j - k - 1, j + 2). Any two outer arcs cross, any two inner arcs cross,
    and every inner arc nests strictly inside every outer arc, so the
    intersection graph is two disjoint k-cliques. Unit weights by default;
    filaments are listed outer first.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    spans = [(2 * i - 4 * k, 2 * i + 2 * k + 2) for i in range(k)]
    spans += [(j - k - 1, j + 2) for j in range(k)]
    fils = tuple(SemicircleFilament(lo, hi) for lo, hi in spans)
    if weights is None:
        weights = (1,) * (2 * k)
    return Instance(fils, tuple(weights))


def gen_random_arcs(n: int, seed: int = 0,
                    weight_range: tuple[int, int] | None = None) -> Instance:
    """n semicircles over a random pairing of the 2n distinct points 1..2n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = SplitMix64(seed)
    points = list(range(1, 2 * n + 1))
    rng.shuffle(points)
    fils = []
    for i in range(n):
        a, b = points[2 * i], points[2 * i + 1]
        fils.append(SemicircleFilament(min(a, b), max(a, b)))
    return Instance(tuple(fils), _weights(rng, n, weight_range))


def gen_random_polylines(n: int, seed: int = 0, segments: int = 3,
                         weight_range: tuple[int, int] | None = None
                         ) -> Instance:
    """n valid polyline filaments over a random pairing of 2n distinct points.

    Each filament runs from (l,0) to (r,0) through segments-1 interior
    vertices with x inside [l, r] (sorted left to right) and y in 1..10, so
    every output satisfies the filament conditions by construction.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if segments < 1:
        raise ValueError("need at least one segment per filament")
    rng = SplitMix64(seed)
    points = list(range(1, 2 * n + 1))
    rng.shuffle(points)
    fils = []
    for i in range(n):
        a, b = points[2 * i], points[2 * i + 1]
        lo, hi = min(a, b), max(a, b)
        interior = sorted((rng.randint(lo, hi), rng.randint(1, 10))
                          for _ in range(segments - 1))
        vertices = [Point(lo, 0)]
        vertices += [Point(x, y) for x, y in interior]
        vertices.append(Point(hi, 0))
        fils.append(PolylineFilament(tuple(vertices)))
    return Instance(tuple(fils), _weights(rng, n, weight_range))


def gen_nested_arcs(n: int, seed: int = 0,
                    weight_range: tuple[int, int] | None = None) -> Instance:
    """n strictly nested semicircles: arc i spans (i, 2n - 1 - i)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = SplitMix64(seed)
    fils = tuple(SemicircleFilament(i, 2 * n - 1 - i) for i in range(n))
    return Instance(fils, _weights(rng, n, weight_range))


def generate(spec: GeneratorSpec) -> Instance:
    """Dispatch a spec to its family; equal specs yield equal instances."""
    if spec.family == "worstcase":
        if spec.n % 2:
            raise ValueError("worstcase size must be even (two equal cliques)")
        k = spec.n // 2
        if spec.weight_range is None:
            return gen_worstcase(k)
        rng = SplitMix64(spec.seed)
        return gen_worstcase(k, _weights(rng, spec.n, spec.weight_range))
    if spec.family == "random-arcs":
        return gen_random_arcs(spec.n, spec.seed, spec.weight_range)
    if spec.family == "random-polylines":
        return gen_random_polylines(spec.n, spec.seed, spec.segments,
                                    spec.weight_range)
    if spec.family == "nested-arcs":
        return gen_nested_arcs(spec.n, spec.seed, spec.weight_range)
    raise ValueError(f"unknown family {spec.family!r}")
