"""Shared fixtures and independent test oracles.

The oracles here deliberately re-derive results through different code
paths than the library (half-plane hull test, Fraction-based crossing
predicate, full cycle enumeration) so agreement is meaningful.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest

from tsplab import Instance, Point, validate
from tsplab.rng import Xoshiro256StarStar


@pytest.fixture
def square() -> Instance:
    return validate([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def square_plus_center() -> Instance:
    return validate([(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)])


class ForcedRng:
    """Feeds prescribed draws to operators under test."""

    def __init__(self, uniforms=(), belows=()):
        self.uniforms = list(uniforms)
        self.belows = list(belows)

    def uniform(self) -> float:
        return self.uniforms.pop(0)

    def randbelow(self, bound: int) -> int:
        v = self.belows.pop(0)
        assert 0 <= v < bound, f"forced draw {v} out of range {bound}"
        return v


def brute_hull(points) -> set[int]:
    """Hull labels by the O(n^3) half-plane test: an ordered pair (p, q)
    is a hull edge iff every other point lies strictly to its left."""
    labels = set()
    for p, q in itertools.permutations(points, 2):
        if all(
            _cross_sign(p, q, r) > 0
            for r in points
            if r.id not in (p.id, q.id)
        ):
            labels.add(p.id)
            labels.add(q.id)
    return labels


def _cross_sign(p, q, r) -> int:
    v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (v > 0) - (v < 0)


def frac_segments_cross(a, b, c, d) -> bool:
    """Proper-crossing predicate via exact rational intersection point.

    Solves for the intersection of the supporting lines with Fractions
    and checks it is interior to both segments.
    """
    r = (b.x - a.x, b.y - a.y)
    s = (d.x - c.x, d.y - c.y)
    denom = r[0] * s[1] - r[1] * s[0]
    if denom == 0:
        return False
    t = Fraction((c.x - a.x) * s[1] - (c.y - a.y) * s[0], denom)
    u = Fraction((c.x - a.x) * r[1] - (c.y - a.y) * r[0], denom)
    return 0 < t < 1 and 0 < u < 1


def cycle_edges(tour) -> frozenset[frozenset[int]]:
    n = len(tour)
    return frozenset(frozenset((tour[i], tour[(i + 1) % n])) for i in range(n))


def crossing_count_fractions(instance: Instance, tour) -> int:
    """Crossing count with the Fraction predicate (fresh code path)."""
    n = instance.n
    pts = instance.points
    segs = [
        (pts[tour[i] - 1], pts[tour[(i + 1) % n] - 1])
        for i in range(n)
    ]
    count = 0
    for (a, b), (c, d) in itertools.combinations(segs, 2):
        if len({a.id, b.id, c.id, d.id}) == 4 and frac_segments_cross(a, b, c, d):
            count += 1
    return count


def all_cycles(n: int):
    """Every distinct undirected Hamiltonian cycle: label 1 fixed first,
    reflections quotiented."""
    for rest in itertools.permutations(range(2, n + 1)):
        if rest[0] < rest[-1]:
            yield (1,) + rest


def slow_tour_length(instance: Instance, tour) -> float:
    """Length via per-edge sqrt, summed in tour order with fsum."""
    pts = instance.points
    n = len(tour)
    terms = []
    for i in range(n):
        p = pts[tour[i] - 1]
        q = pts[tour[(i + 1) % n] - 1]
        dx = p.x - q.x
        dy = p.y - q.y
        terms.append(math.sqrt(dx * dx + dy * dy))
    return math.fsum(terms)


def random_tour(n: int, rng: Xoshiro256StarStar) -> tuple[int, ...]:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return tuple(perm)
