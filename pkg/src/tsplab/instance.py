"""Instance construction: validated point sets, generators, file I/O.

Generators are pure functions of their arguments and seed: all sampling
decisions are integer draws from the package RNG, so reruns reproduce
instances exactly. Generators reject candidate points that would create
duplicates or collinear triples and give up honestly after a fixed
number of draws.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import (
    CollinearTripleError,
    DuplicatePointError,
    GenerationExhaustedError,
    ParseError,
    TooSmallError,
)
from .geom import Point, convex_hull, distance, instance_metrics, point_strictly_inside
from .rng import Xoshiro256StarStar

# total point draws a generator may spend before giving up
RETRY_BUDGET = 10**6

_COORD_LIMIT = 2**31  # |coordinate| < 2^31 keeps orientation exact in 64 bits


class Instance:
    """Validated planar point set with derived hull data.

    Immutable after construction; metrics and the distance matrix are
    computed lazily and cached. Build instances through validate() or a
    generator, not directly.
    """

    __slots__ = ("points", "grid_size", "hull", "inner_labels", "_metrics", "_dist", "_xs", "_ys")

    def __init__(self, points: tuple[Point, ...], grid_size: int, hull: tuple[int, ...]):
        self.points = points
        self.grid_size = grid_size
        self.hull = hull
        hull_set = set(hull)
        self.inner_labels = tuple(p.id for p in points if p.id not in hull_set)
        self._metrics = None
        self._dist = None
        self._xs = None
        self._ys = None

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def inner_count(self) -> int:
        return len(self.inner_labels)

    @property
    def metrics(self):
        if self._metrics is None:
            self._metrics = instance_metrics(self.points)
        return self._metrics

    @property
    def distance_matrix(self) -> tuple[float, ...]:
        """Flat row-major n*n matrix indexed by 0-based labels."""
        if self._dist is None:
            n = len(self.points)
            d = [0.0] * (n * n)
            for i in range(n):
                for j in range(i + 1, n):
                    v = distance(self.points[i], self.points[j])
                    d[i * n + j] = v
                    d[j * n + i] = v
            self._dist = tuple(d)
        return self._dist

    @property
    def coords(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(xs, ys) indexed by 0-based label."""
        if self._xs is None:
            self._xs = tuple(p.x for p in self.points)
            self._ys = tuple(p.y for p in self.points)
        return self._xs, self._ys

    def point(self, label: int) -> Point:
        return self.points[label - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.grid_size == other.grid_size
            and [(p.x, p.y) for p in self.points] == [(p.x, p.y) for p in other.points]
        )

    def __repr__(self) -> str:
        return f"Instance(n={self.n}, m={self.grid_size}, k={self.inner_count})"


def validate(points: Sequence, grid_size: int = 0) -> Instance:
    """Check a point sequence and build an Instance.

    Accepts Point objects or (x, y) pairs; labels are assigned 1..n in
    input order. Raises TooSmallError, DuplicatePointError, or
    CollinearTripleError on the first violation found.
    """
    if len(points) < 3:
        raise TooSmallError(f"need at least 3 points, got {len(points)}")
    pts = []
    for idx, p in enumerate(points):
        if isinstance(p, Point):
            x, y = p.x, p.y
        else:
            x, y = p
        if not (-_COORD_LIMIT < x < _COORD_LIMIT and -_COORD_LIMIT < y < _COORD_LIMIT):
            raise ValueError(f"coordinate ({x}, {y}) outside 32-bit signed range")
        if grid_size > 0 and not (0 <= x < grid_size and 0 <= y < grid_size):
            raise ValueError(f"coordinate ({x}, {y}) outside {grid_size}x{grid_size} grid")
        pts.append(Point(idx + 1, x, y))
    seen: dict[tuple[int, int], int] = {}
    for p in pts:
        key = (p.x, p.y)
        if key in seen:
            raise DuplicatePointError(seen[key], p.id)
        seen[key] = p.id
    n = len(pts)
    for i in range(n):
        xi, yi = pts[i].x, pts[i].y
        for j in range(i + 1, n):
            dx = pts[j].x - xi
            dy = pts[j].y - yi
            for k in range(j + 1, n):
                if dx * (pts[k].y - yi) - dy * (pts[k].x - xi) == 0:
                    raise CollinearTripleError(i + 1, j + 1, k + 1)
    hull = convex_hull(pts)
    return Instance(tuple(pts), grid_size, hull)


def _collinear_with_any(coords: list[tuple[int, int]], cand: tuple[int, int]) -> bool:
    cx, cy = cand
    n = len(coords)
    for i in range(n):
        xi, yi = coords[i]
        dxi = cx - xi
        dyi = cy - yi
        for j in range(i + 1, n):
            if dxi * (coords[j][1] - yi) - dyi * (coords[j][0] - xi) == 0:
                return True
    return False


def generate_grid(n: int, m: int, seed: int) -> Instance:
    """n distinct points uniform on the m x m grid, no three collinear.

    Candidates violating distinctness or collinearity are rejected and
    redrawn one at a time. Deterministic given the seed.
    """
    if m < 3:
        raise ValueError(f"grid side must be >= 3, got {m}")
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    rng = Xoshiro256StarStar(seed)
    coords: list[tuple[int, int]] = []
    taken: set[tuple[int, int]] = set()
    draws = 0
    while len(coords) < n:
        if draws >= RETRY_BUDGET:
            raise GenerationExhaustedError(
                f"could not place {n} collinear-free points on a {m}x{m} grid "
                f"within {RETRY_BUDGET} draws"
            )
        cand = (rng.randbelow(m), rng.randbelow(m))
        draws += 1
        if cand in taken or _collinear_with_any(coords, cand):
            continue
        coords.append(cand)
        taken.add(cand)
    return validate(coords, grid_size=m)


# jitter resolution for convex placement; the draw itself is an integer
_JITTER_STEPS = 1 << 20


def _convex_coords(n: int, m: int, rng: Xoshiro256StarStar) -> list[tuple[int, int]]:
    """Place n grid points in convex position near a circle.

    Each point sits at an equally spaced angle plus a jitter of at most
    pi/(4n), rounded to the grid. Offending points (duplicate, collinear,
    or not a hull vertex) are redrawn until the configuration is strictly
    convex or the retry budget runs out.
    """
    radius = (m - 1) / 2.0
    center = (m - 1) / 2.0
    span = math.pi / (4.0 * n)
    base = [2.0 * math.pi * i / n for i in range(n)]

    def draw(i: int) -> tuple[int, int]:
        # jitter in [-span, span], decided by an integer draw
        j = rng.randbelow(2 * _JITTER_STEPS + 1) - _JITTER_STEPS
        theta = base[i] + span * (j / _JITTER_STEPS)
        x = math.floor(center + radius * math.cos(theta) + 0.5)
        y = math.floor(center + radius * math.sin(theta) + 0.5)
        return (x, y)

    coords = []
    draws = 0
    for i in range(n):
        coords.append(draw(i))
        draws += 1

    while True:
        bad = _first_convex_offender(coords)
        if bad is None:
            return coords
        if draws >= RETRY_BUDGET:
            raise GenerationExhaustedError(
                f"could not place {n} convex grid points on a {m}x{m} grid "
                f"within {RETRY_BUDGET} draws"
            )
        coords[bad] = draw(bad)
        draws += 1


def _first_convex_offender(coords: list[tuple[int, int]]) -> int | None:
    """Index of the first point breaking strict convex position, else None."""
    n = len(coords)
    seen: dict[tuple[int, int], int] = {}
    for i, c in enumerate(coords):
        if c in seen:
            return i
        seen[c] = i
    for i in range(n):
        xi, yi = coords[i]
        for j in range(i + 1, n):
            dx = coords[j][0] - xi
            dy = coords[j][1] - yi
            for k in range(j + 1, n):
                if dx * (coords[k][1] - yi) - dy * (coords[k][0] - xi) == 0:
                    return k
    pts = [Point(i + 1, x, y) for i, (x, y) in enumerate(coords)]
    hull = set(convex_hull(pts))
    for i in range(n):
        if i + 1 not in hull:
            return i
    return None


def generate_convex(n: int, m: int, seed: int) -> Instance:
    """Instance with every point a hull vertex (inner_count = 0).

    Requires m >= 8n of grid headroom; that is a documented heuristic,
    and the generator reports failure honestly if placement stalls.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if m < 8 * n:
        raise ValueError(f"convex placement needs m >= 8n (m={m}, n={n})")
    rng = Xoshiro256StarStar(seed)
    coords = _convex_coords(n, m, rng)
    return validate(coords, grid_size=m)


def generate_with_inner(h: int, k: int, m: int, seed: int) -> Instance:
    """Instance with exactly h hull vertices and k strictly interior points.

    The hull part follows the convex generator; interior candidates are
    rejection-sampled against containment, distinctness, and collinearity
    with all previously placed points. Interior points cannot change the
    hull, so the hull count stays exactly h.
    """
    if h < 3:
        raise ValueError(f"need h >= 3 hull points, got {h}")
    if k < 0:
        raise ValueError(f"need k >= 0 inner points, got {k}")
    if m < 8 * h:
        raise ValueError(f"convex placement needs m >= 8h (m={m}, h={h})")
    rng = Xoshiro256StarStar(seed)
    coords = _convex_coords(h, m, rng)
    hull_pts = [Point(i + 1, x, y) for i, (x, y) in enumerate(coords)]
    taken = set(coords)
    draws = 0
    while len(coords) < h + k:
        if draws >= RETRY_BUDGET:
            raise GenerationExhaustedError(
                f"could not place {k} interior points within {RETRY_BUDGET} draws"
            )
        cand = (rng.randbelow(m), rng.randbelow(m))
        draws += 1
        if cand in taken:
            continue
        if not point_strictly_inside(hull_pts, Point(0, cand[0], cand[1])):
            continue
        if _collinear_with_any(coords, cand):
            continue
        coords.append(cand)
        taken.add(cand)
    return validate(coords, grid_size=m)


def write_instance(instance: Instance, path) -> None:
    """Write the text format: 'n m' header then one 'x y' row per point."""
    lines = [f"{instance.n} {instance.grid_size}"]
    lines.extend(f"{p.x} {p.y}" for p in instance.points)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def read_instance(path) -> Instance:
    """Read and validate an instance file. Raises ParseError on malformed
    input and the usual validation errors on bad geometry."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    lines = raw.splitlines()
    if not lines:
        raise ParseError("empty instance file")
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ParseError(f"non-integer header: {lines[0]!r}") from exc
    if m < 0:
        raise ParseError(f"grid size must be >= 0, got {m}")
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != n or len(lines[1:]) > len(body):
        raise ParseError(f"expected {n} coordinate rows, found {len(lines) - 1}")
    coords = []
    for row, ln in enumerate(body, start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"line {row}: expected 'x y', got {ln!r}")
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError(f"line {row}: non-integer coordinate in {ln!r}") from exc
        if m > 0 and not (0 <= x < m and 0 <= y < m):
            raise ParseError(f"line {row}: coordinate ({x}, {y}) outside {m}x{m} grid")
        coords.append((x, y))
    return validate(coords, grid_size=m)


def write_tour(tour: Sequence[int], path) -> None:
    """Write a tour as one line of space-separated 1-based labels."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(" ".join(str(v) for v in tour) + "\n")


def read_tour(path) -> tuple[int, ...]:
    """Read a tour file and check it is a permutation of 1..n."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    parts = raw.split()
    try:
        labels = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ParseError(f"non-integer label in tour file {path}") from exc
    if not labels:
        raise ParseError("empty tour file")
    if sorted(labels) != list(range(1, len(labels) + 1)):
        raise ParseError("tour file is not a permutation of 1..n")
    return labels
