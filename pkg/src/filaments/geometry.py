"""Exact geometry for interval filament curves.

A filament is a curve in the closed upper half-plane that starts and ends on
the x-axis and never leaves the vertical strip spanned by its two endpoints.
Two concrete curve kinds are supported here:

* ``PolylineFilament`` -- an explicit vertex chain (possibly self-intersecting).
* ``SemicircleFilament`` -- the upper semicircle over a diameter on the axis.

All coordinates are exact rationals (``int`` or ``fractions.Fraction``) and
every predicate is decided exactly: there are no epsilons, so touching curves
(a single shared point) always count as intersecting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

Rational = Union[int, Fraction]


class Point(NamedTuple):
    x: Rational
    y: Rational


@dataclass(frozen=True)
class PolylineFilament:
    """Curve given by straight segments between consecutive vertices.

    The left endpoint is the first vertex, the right endpoint the last; both
    are expected on the axis. Construction only enforces the structural
    minimum (two vertices); use :func:`validate_filament` to check the
    filament conditions themselves.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ValueError("polyline needs at least 2 vertices")

    @property
    def left(self) -> Rational:
        return self.vertices[0].x

    @property
    def right(self) -> Rational:
        return self.vertices[-1].x


@dataclass(frozen=True)
class SemicircleFilament:
    """Upper semicircle over the diameter [left, right] on the axis."""

    left: Rational
    right: Rational


Filament = Union[PolylineFilament, SemicircleFilament]


@dataclass(frozen=True)
class Violation:
    condition: str
    vertex: int


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_filament(f: PolylineFilament) -> ValidationReport:
    """Check the three filament conditions on every vertex.

    Violations are report entries, never exceptions: the report names the
    failed condition together with the offending vertex index.
    """
    violations: list[Violation] = []
    lo, hi = f.left, f.right
    if lo > hi:
        violations.append(Violation("l <= r", len(f.vertices) - 1))
    for i, v in enumerate(f.vertices):
        if v.y < 0:
            violations.append(Violation("y >= 0", i))
        if lo <= hi and not (lo <= v.x <= hi):
            violations.append(Violation("l <= x <= r", i))
    for i in (0, len(f.vertices) - 1):
        if f.vertices[i].y != 0:
            violations.append(Violation("endpoint y == 0", i))
    return ValidationReport(tuple(violations))


def _orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right, 0 collinear."""
    val = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if val > 0:
        return 1
    if val < 0:
        return -1
    return 0


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    """Whether p, known collinear with a-b, lies on the closed segment a-b."""
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def segments_intersect(a1: Point, a2: Point, b1: Point, b2: Point) -> bool:
    """Exact closed-segment intersection via orientation tests.

    A single shared point (endpoint touching, collinear overlap) counts.
    """
    o1 = _orient(a1, a2, b1)
    o2 = _orient(a1, a2, b2)
    o3 = _orient(b1, b2, a1)
    o4 = _orient(b1, b2, a2)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment(a1, a2, b1):
        return True
    if o2 == 0 and _on_segment(a1, a2, b2):
        return True
    if o3 == 0 and _on_segment(b1, b2, a1):
        return True
    if o4 == 0 and _on_segment(b1, b2, a2):
        return True
    return False


def semicircles_intersect(l1: Rational, r1: Rational,
                          l2: Rational, r2: Rational) -> bool:
    """Whether the upper semicircles over [l1,r1] and [l2,r2] share a point.

    Combinatorial rule, exact in the interval endpoints: disjoint intervals
    never meet, a shared interval endpoint is a shared curve point, proper
    overlap forces a crossing above the axis, and strict nesting leaves the
    inner arc strictly inside the outer one.
    """
    if r1 < l2 or r2 < l1:
        return False
    if l1 == l2 or r1 == r2 or r1 == l2 or r2 == l1:
        return True
    # Intervals overlap with four distinct endpoints: nested or crossing.
    if l1 < l2:
        return not r2 < r1
    return not r1 < r2


def _clip_to_upper_half(p: Point, q: Point) -> tuple[Point, Point] | None:
    """Portion of segment p-q with y >= 0, or None if it lies strictly below."""
    if p.y >= 0 and q.y >= 0:
        return p, q
    if p.y < 0 and q.y < 0:
        return None
    # Exactly one endpoint below the axis; cut at y = 0.
    t = Fraction(p.y, p.y - q.y)
    cross = Point(p.x + t * (q.x - p.x), 0)
    return (cross, q) if p.y < 0 else (p, cross)


def _segment_meets_semicircle(p: Point, q: Point,
                              left: Rational, right: Rational) -> bool:
    """Exact test of a closed segment against the arc over [left, right].

    The segment is clipped to the closed upper half-plane; within it, the arc
    coincides with the full circle, so the segment meets the arc iff its
    squared distance to the centre sweeps across the squared radius. The
    squared distance along the segment is a convex quadratic, so its range is
    [value at the clamped vertex, max of the endpoint values]; all arithmetic
    stays rational.
    """
    clipped = _clip_to_upper_half(p, q)
    if clipped is None:
        return False
    p, q = clipped
    cx = Fraction(left + right, 2)
    rad_sq = Fraction(right - left, 2) ** 2

    dx, dy = q.x - p.x, q.y - p.y
    ex, ey = p.x - cx, p.y
    # squared distance(t) = a t^2 + b t + c for t in [0, 1]
    a = dx * dx + dy * dy
    b = 2 * (dx * ex + dy * ey)
    c = ex * ex + ey * ey

    d0, d1 = c, a + b + c
    if a == 0:
        lo = hi = d0  # degenerate segment
    else:
        t = -Fraction(b, 2 * a)
        if t <= 0:
            lo = d0
        elif t >= 1:
            lo = d1
        else:
            lo = a * t * t + b * t + c
        hi = max(d0, d1)
    return lo <= rad_sq <= hi


def filaments_intersect(f: Filament, g: Filament) -> bool:
    """Whether two filament curves share at least one point.

    Polyline pairs reduce to pairwise segment tests, semicircle pairs to the
    combinatorial rule, and mixed pairs to exact segment-versus-arc tests.
    A filament always intersects itself.
    """
    if isinstance(f, SemicircleFilament) and isinstance(g, SemicircleFilament):
        return semicircles_intersect(f.left, f.right, g.left, g.right)
    if isinstance(f, PolylineFilament) and isinstance(g, PolylineFilament):
        fv, gv = f.vertices, g.vertices
        gboxes = [(min(gv[j].x, gv[j + 1].x), max(gv[j].x, gv[j + 1].x),
                   min(gv[j].y, gv[j + 1].y), max(gv[j].y, gv[j + 1].y))
                  for j in range(len(gv) - 1)]
        for i in range(len(fv) - 1):
            a, b = fv[i], fv[i + 1]
            ax0, ax1 = (a.x, b.x) if a.x <= b.x else (b.x, a.x)
            ay0, ay1 = (a.y, b.y) if a.y <= b.y else (b.y, a.y)
            for j in range(len(gv) - 1):
                bx0, bx1, by0, by1 = gboxes[j]
                if ax1 < bx0 or bx1 < ax0 or ay1 < by0 or by1 < ay0:
                    continue  # disjoint boxes cannot meet
                if segments_intersect(a, b, gv[j], gv[j + 1]):
                    return True
        return False
    if isinstance(f, SemicircleFilament):
        f, g = g, f
    assert isinstance(f, PolylineFilament) and isinstance(g, SemicircleFilament)
    fv = f.vertices
    return any(_segment_meets_semicircle(fv[i], fv[i + 1], g.left, g.right)
               for i in range(len(fv) - 1))


def semicircle_chords(sc: SemicircleFilament, chords: int = 64) -> PolylineFilament:
    """Discretize a semicircle as a chord polyline with vertices on the arc.

    Vertices are exact rational points produced by the tangent-half-angle
    parametrization, spaced near-uniformly in angle, listed left to right.
    Intended for differential testing of the analytic arc predicates.
    """
    import math

    if chords < 2:
        raise ValueError("need at least 2 chords")
    if sc.left == sc.right:
        return PolylineFilament((Point(sc.left, 0), Point(sc.right, 0)))
    cx = Fraction(sc.left + sc.right, 2)
    rad = Fraction(sc.right - sc.left, 2)
    params: list[Fraction] = []
    for k in range(chords):
        # rational approximation of tan(theta/2) at theta = pi * k / chords
        u = Fraction(round(math.tan(math.pi * k / (2 * chords)) * 4096), 4096)
        if not params or u > params[-1]:
            params.append(u)
    pts = [Point(cx + rad * (1 - u * u) / (1 + u * u),
                 rad * 2 * u / (1 + u * u)) for u in params]
    pts.append(Point(sc.left, 0))
    pts.reverse()
    return PolylineFilament(tuple(pts))
