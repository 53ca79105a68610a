"""Exact planar primitives on integer grid points.

Orientation and crossing predicates run in exact integer arithmetic, so
there are no tolerance questions. Distances and angles are binary64 and
feed only bounds and reports, never branch decisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import CollinearTripleError, TooSmallError


class Point(NamedTuple):
    """Labeled planar point with integer grid coordinates."""

    id: int
    x: int
    y: int


@dataclass(frozen=True)
class InstanceMetrics:
    """Distance and angle summary of a point set.

    epsilon is the minimum angle formed at the middle point over all
    point triples; gamma and min_uncross_gain are the derived hardness
    factor and the guaranteed fitness gain of removing a crossing.
    """

    d_min: float
    d_max: float
    epsilon: float
    gamma: float
    min_uncross_gain: float


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q-p) x (r-p).

    +1 for a left turn, -1 for a right turn, 0 for collinear points.
    Exact for all coordinates in the 32-bit signed range.
    """
    cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if cross > 0:
        return 1
    if cross < 0:
        return -1
    return 0


def segments_properly_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the open segments ab and cd cross at an interior point.

    Segments that share an endpoint do not properly intersect. Assumes
    no three of the involved points are collinear (a strict straddle
    test in both directions decides everything).
    """
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    if o1 * o2 >= 0:
        return False
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    return o3 * o4 < 0


def convex_hull(points: Sequence[Point]) -> tuple[int, ...]:
    """Hull vertex labels in counterclockwise order.

    Monotone-chain sweep with exact orientation tests. The cycle starts
    at the lexicographically smallest point. Requires at least three
    points, none of them collinear triples.
    """
    if len(points) < 3:
        raise TooSmallError("convex hull needs at least 3 points")
    pts = sorted(points, key=lambda p: (p.x, p.y))
    lower: list[Point] = []
    for p in pts:
        while len(lower) > 1 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) > 1 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return tuple(p.id for p in hull)


def distance(p: Point, q: Point) -> float:
    """Euclidean distance; the squared radicand is exact."""
    dx = p.x - q.x
    dy = p.y - q.y
    return math.sqrt(dx * dx + dy * dy)


def cos_ratio(epsilon: float) -> float:
    """cos(eps)/(1 - cos(eps)), via 1 - cos(eps) = 2 sin^2(eps/2).

    The half-angle form stays accurate for tiny angles, where the naive
    difference rounds to zero.
    """
    s = math.sin(epsilon / 2.0)
    return math.cos(epsilon) / (2.0 * s * s)


def gamma_of(d_min: float, d_max: float, epsilon: float) -> float:
    """Hardness factor (d_max/d_min - 1) * cos(eps) / (1 - cos(eps))."""
    return (d_max / d_min - 1.0) * cos_ratio(epsilon)


def min_uncross_gain_of(d_min: float, epsilon: float) -> float:
    """Lower bound 2*d_min*(1-cos(eps))/cos(eps) on the length saved by
    an inversion that removes a crossing."""
    return 2.0 * d_min / cos_ratio(epsilon)


def instance_metrics(points: Sequence[Point]) -> InstanceMetrics:
    """Compute d_min, d_max, the minimum angle, and derived factors.

    Plain O(n^3) scan over triples; desk-scale n keeps this cheap and
    obvious. A collinear triple makes the angle bound vanish and is
    rejected.
    """
    n = len(points)
    if n < 3:
        raise TooSmallError("metrics need at least 3 points")
    d_min = math.inf
    d_max = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            d = distance(points[i], points[j])
            if d < d_min:
                d_min = d
            if d > d_max:
                d_max = d
    epsilon = math.inf
    for v in range(n):
        pv = points[v]
        for i in range(n):
            if i == v:
                continue
            ux = points[i].x - pv.x
            uy = points[i].y - pv.y
            for j in range(i + 1, n):
                if j == v:
                    continue
                wx = points[j].x - pv.x
                wy = points[j].y - pv.y
                cross = ux * wy - uy * wx
                if cross == 0:
                    raise CollinearTripleError(points[i].id, pv.id, points[j].id)
                theta = math.atan2(abs(cross), ux * wx + uy * wy)
                if theta < epsilon:
                    epsilon = theta
    return InstanceMetrics(
        d_min=d_min,
        d_max=d_max,
        epsilon=epsilon,
        gamma=gamma_of(d_min, d_max, epsilon),
        min_uncross_gain=min_uncross_gain_of(d_min, epsilon),
    )


def grid_angle_lower_bound(m: int) -> float:
    """Guaranteed minimum angle of any collinear-free point set on an
    m x m grid: arctan(1/(2(m-2)^2))."""
    if m < 3:
        raise ValueError(f"grid side must be >= 3, got {m}")
    # atan2 keeps this bit-identical with the atan2-based angle scan
    # in instance_metrics when the extremal slope pair occurs
    return math.atan2(1.0, 2.0 * (m - 2) ** 2)


def point_strictly_inside(hull_points: Sequence[Point], p: Point) -> bool:
    """True iff p lies strictly inside the CCW convex polygon."""
    h = len(hull_points)
    for i in range(h):
        if orient(hull_points[i], hull_points[(i + 1) % h], p) <= 0:
            return False
    return True
