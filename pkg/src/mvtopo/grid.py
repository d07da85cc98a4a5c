"""Lattice points, digital images with c_u adjacency, and graph queries on them.

A digital image is a finite subset of Z^n together with a c_u adjacency. Two
distinct points are c_u-adjacent when every coordinate differs by at most one
and at most ``u`` coordinates differ. In Z^2, c_1 is 4-adjacency and c_2 is
8-adjacency.

Every query here is relative to the owning image: ``neighbors`` returns only
neighbors inside the image, and paths never leave the image.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from mvtopo.errors import DomainError, InvalidInputError, UnreachableError

Point = tuple[int, ...]
PointLike = Union[Point, Iterable[int], int]


def as_point(p: PointLike) -> Point:
    """Normalize ``p`` to a tuple of ints; a bare int becomes a 1-tuple."""
    if isinstance(p, bool):
        raise InvalidInputError(f"not a lattice point: {p!r}")
    if isinstance(p, int):
        return (p,)
    try:
        coords = tuple(p)
    except TypeError:
        raise InvalidInputError(f"not a lattice point: {p!r}") from None
    for c in coords:
        if isinstance(c, bool) or not isinstance(c, int):
            raise InvalidInputError(f"non-integer coordinate in {p!r}")
    return coords


def as_point_set(points: Iterable[PointLike]) -> frozenset[Point]:
    return frozenset(as_point(p) for p in points)


@dataclass(frozen=True)
class AdjacencySpec:
    """The c_u adjacency on Z^n."""

    dimension: int
    u: int

    def __post_init__(self):
        if isinstance(self.dimension, bool) or not isinstance(self.dimension, int) or self.dimension < 1:
            raise InvalidInputError(f"dimension must be a positive integer, got {self.dimension!r}")
        if isinstance(self.u, bool) or not isinstance(self.u, int) or not 1 <= self.u <= self.dimension:
            raise InvalidInputError(f"need 1 <= u <= {self.dimension}, got u={self.u!r}")

    @cached_property
    def offsets(self) -> tuple[Point, ...]:
        """Nonzero steps d with every |d_i| <= 1 and at most u nonzero entries."""
        return tuple(
            d
            for d in itertools.product((-1, 0, 1), repeat=self.dimension)
            if 0 < sum(1 for c in d if c) <= self.u
        )

    def adjacent(self, x: Point, y: Point) -> bool:
        if len(x) != self.dimension or len(y) != self.dimension:
            raise InvalidInputError(
                f"points {x} and {y} do not both have dimension {self.dimension}"
            )
        differing = 0
        for a, b in zip(x, y):
            if a != b:
                if abs(a - b) != 1:
                    return False
                differing += 1
        return 0 < differing <= self.u


def c(u: int, dimension: int) -> AdjacencySpec:
    """Shorthand: ``c(2, 2)`` is 8-adjacency in the plane."""
    return AdjacencySpec(dimension, u)


@dataclass(frozen=True)
class DigitalImage:
    """A finite set of lattice points carrying a c_u adjacency."""

    adjacency: AdjacencySpec
    points: frozenset[Point]

    def __post_init__(self):
        pts = as_point_set(self.points)
        object.__setattr__(self, "points", pts)
        n = self.adjacency.dimension
        for p in pts:
            if len(p) != n:
                raise InvalidInputError(f"point {p} does not have dimension {n}")

    @classmethod
    def from_points(cls, points: Iterable[PointLike], u: int = 1, dimension: int | None = None) -> DigitalImage:
        pts = as_point_set(points)
        if dimension is None:
            if not pts:
                raise InvalidInputError("cannot infer the dimension of an empty image")
            dimension = len(next(iter(pts)))
        return cls(AdjacencySpec(dimension, u), pts)

    @classmethod
    def interval(cls, a: int, b: int) -> DigitalImage:
        """The digital interval [a, b]_Z with c_1 adjacency."""
        return cls(AdjacencySpec(1, 1), frozenset((i,) for i in range(a, b + 1)))

    def restrict(self, subset: Iterable[PointLike]) -> DigitalImage:
        """The subimage on ``subset`` with the same adjacency."""
        sub = self.check_subset(subset)
        return DigitalImage(self.adjacency, sub)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.sorted_points)

    def __contains__(self, p) -> bool:
        try:
            return as_point(p) in self.points
        except InvalidInputError:
            return False

    @property
    def dimension(self) -> int:
        return self.adjacency.dimension

    @cached_property
    def sorted_points(self) -> tuple[Point, ...]:
        return tuple(sorted(self.points))

    @cached_property
    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.sorted_points)}

    @cached_property
    def _neighbor_table(self) -> dict[Point, frozenset[Point]]:
        pts = self.points
        offs = self.adjacency.offsets
        table = {}
        for p in pts:
            table[p] = frozenset(
                q for q in (tuple(a + d for a, d in zip(p, off)) for off in offs) if q in pts
            )
        return table

    def check_point(self, x: PointLike) -> Point:
        p = as_point(x)
        if len(p) != self.dimension:
            raise InvalidInputError(f"point {p} does not have dimension {self.dimension}")
        if p not in self.points:
            raise DomainError(f"point {p} is not in the image")
        return p

    def check_subset(self, subset: Iterable[PointLike]) -> frozenset[Point]:
        sub = as_point_set(subset)
        stray = [p for p in sub if p not in self.points]
        if stray:
            raise InvalidInputError(f"points {sorted(stray)[:5]} are not in the image")
        return sub

    def neighbors(self, x: PointLike) -> frozenset[Point]:
        return self._neighbor_table[self.check_point(x)]

    def edges(self) -> list[tuple[Point, Point]]:
        """Adjacent pairs (x, y) with x < y, in lexicographic order."""
        table = self._neighbor_table
        return [(x, y) for x in self.sorted_points for y in sorted(table[x]) if x < y]


def is_adjacent(spec: AdjacencySpec, x: PointLike, y: PointLike) -> bool:
    return spec.adjacent(as_point(x), as_point(y))


def neighbors(image: DigitalImage, x: PointLike) -> frozenset[Point]:
    return image.neighbors(x)


def adjacent_or_equal(spec: AdjacencySpec, x: Point, y: Point) -> bool:
    return x == y or spec.adjacent(x, y)


def sets_adjacent(image: DigitalImage, A: Iterable[PointLike], B: Iterable[PointLike]) -> bool:
    """True when some a in A and b in B are equal or adjacent."""
    A = image.check_subset(A)
    B = image.check_subset(B)
    if A & B:
        return True
    if len(A) > len(B):
        A, B = B, A
    table = image._neighbor_table
    return any(not table[a].isdisjoint(B) for a in A)


def _flood(image: DigitalImage, start: Point, within: frozenset[Point]) -> set[Point]:
    table = image._neighbor_table
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for q in table[p]:
            if q in within and q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def is_connected(image: DigitalImage, A: Iterable[PointLike]) -> bool:
    A = image.check_subset(A)
    if len(A) <= 1:
        return True
    return len(_flood(image, min(A), A)) == len(A)


def components(image: DigitalImage, A: Iterable[PointLike] | None = None) -> list[frozenset[Point]]:
    """Maximal connected pieces of ``A`` (default: the whole image), ordered by minimal point."""
    A = image.points if A is None else image.check_subset(A)
    remaining = set(A)
    out = []
    for p in sorted(A):
        if p in remaining:
            comp = _flood(image, p, A)
            remaining -= comp
            out.append(frozenset(comp))
    return out


def bfs_distances(image: DigitalImage, sources: Iterable[Point]) -> dict[Point, int]:
    """Graph distance from the nearest source to every reachable point of the image."""
    table = image._neighbor_table
    dist = {}
    queue = deque()
    for s in sources:
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        p = queue.popleft()
        d = dist[p] + 1
        for q in table[p]:
            if q not in dist:
                dist[q] = d
                queue.append(q)
    return dist


def _check_target(image: DigitalImage, x: PointLike, A: Iterable[PointLike]) -> tuple[Point, frozenset[Point]]:
    x = image.check_point(x)
    A = image.check_subset(A)
    if not A:
        raise InvalidInputError("target set must be nonempty")
    return x, A


def dist_to_set(image: DigitalImage, x: PointLike, A: Iterable[PointLike]) -> int:
    """Length of a shortest path in the image from ``x`` to some point of ``A``."""
    x, A = _check_target(image, x, A)
    if x in A:
        return 0
    dist = bfs_distances(image, [x])
    reach = [dist[a] for a in A if a in dist]
    if not reach:
        raise UnreachableError(f"point {x} cannot reach the target set; the image is not connected")
    return min(reach)


def near_set(image: DigitalImage, x: PointLike, A: Iterable[PointLike]) -> frozenset[Point]:
    """Points of ``A`` whose distance from ``x`` is within one of the minimum."""
    x, A = _check_target(image, x, A)
    dist = bfs_distances(image, [x])
    reach = {a: dist[a] for a in A if a in dist}
    if not reach:
        raise UnreachableError(f"point {x} cannot reach the target set; the image is not connected")
    lo = min(reach.values())
    return frozenset(a for a, d in reach.items() if d <= lo + 1)


def boundary(image: DigitalImage, A: Iterable[PointLike]) -> frozenset[Point]:
    """Points of ``A`` having a neighbor in the image outside ``A``."""
    A = image.check_subset(A)
    table = image._neighbor_table
    return frozenset(a for a in A if not table[a] <= A)


def is_sv_continuous(f: Mapping, X: DigitalImage, Y: DigitalImage) -> bool:
    """Adjacency form of single-valued continuity: adjacent points go to adjacent-or-equal points."""
    g = check_single_valued(f, X, Y)
    spec = Y.adjacency
    return all(adjacent_or_equal(spec, g[x], g[y]) for x, y in X.edges())


def check_single_valued(f: Mapping, X: DigitalImage, Y: DigitalImage) -> dict[Point, Point]:
    """Normalize a single-valued map and check that it is total on X with values in Y."""
    g = {}
    for k, v in f.items():
        g[as_point(k)] = as_point(v)
    missing = X.points - g.keys()
    if missing:
        raise InvalidInputError(f"map is not total; missing {sorted(missing)[:5]}")
    extra = g.keys() - X.points
    if extra:
        raise InvalidInputError(f"map is defined outside its domain at {sorted(extra)[:5]}")
    bad = [x for x, y in g.items() if y not in Y.points]
    if bad:
        raise InvalidInputError(f"values at {sorted(bad)[:5]} lie outside the codomain")
    return g
