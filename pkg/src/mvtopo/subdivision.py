"""Subdivisions S(X, r) of a digital image and the floor projection back to X.

A point of S(X, r) is a rational point z/r; we store only the integer
numerator z. Numerators inherit the base image's c_u adjacency unchanged,
so every adjacency test stays in exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

from mvtopo.errors import DomainError, InvalidInputError
from mvtopo.grid import DigitalImage, Point, PointLike, as_point


def _check_level(r) -> int:
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise InvalidInputError(f"subdivision level must be a positive integer, got {r!r}")
    return r


def block(x: Point, r: int) -> list[Point]:
    """The r^n numerators projecting onto ``x``, in lexicographic order."""
    return [
        tuple(r * xi + di for xi, di in zip(x, d))
        for d in itertools.product(range(r), repeat=len(x))
    ]


def floor_point(z: Point, r: int) -> Point:
    return tuple(zi // r for zi in z)


@dataclass(frozen=True)
class SubdividedImage:
    """S(base, scale), stored as numerator points with the base adjacency."""

    base: DigitalImage
    scale: int

    @cached_property
    def image(self) -> DigitalImage:
        pts = frozenset(z for x in self.base.points for z in block(x, self.scale))
        return DigitalImage(self.base.adjacency, pts)

    @property
    def points(self) -> frozenset[Point]:
        return self.image.points

    @property
    def adjacency(self):
        return self.base.adjacency

    def __len__(self) -> int:
        return len(self.image)


def subdivide(X: DigitalImage, r: int) -> SubdividedImage:
    return SubdividedImage(X, _check_level(r))


def project(S: SubdividedImage, z: PointLike) -> Point:
    """E_r: send a numerator to the base point whose block contains it."""
    z = as_point(z)
    if z not in S.points:
        raise DomainError(f"numerator {z} is not in S(X, {S.scale})")
    return floor_point(z, S.scale)


def preimage(S: SubdividedImage, x: PointLike) -> frozenset[Point]:
    x = S.base.check_point(x)
    return frozenset(block(x, S.scale))


def induced_from(S: SubdividedImage, f: Mapping, Y: DigitalImage):
    """The multivalued function x -> {f(z) : z projects to x}."""
    from mvtopo.grid import check_single_valued
    from mvtopo.multifun import MultiFn

    g = check_single_valued(f, S.image, Y)
    values: dict[Point, set[Point]] = {x: set() for x in S.base.points}
    r = S.scale
    for z, y in g.items():
        values[floor_point(z, r)].add(y)
    return MultiFn(S.base, Y, values)


def check_sub_adj_preserving(X: DigitalImage, r: int) -> bool:
    """Whether each adjacent pair of X has adjacent representatives in their r-blocks."""
    r = _check_level(r)
    spec = X.adjacency
    for x, y in X.edges():
        by = set(block(y, r))
        if not any(
            q in by for z in block(x, r) for q in (tuple(a + d for a, d in zip(z, off)) for off in spec.offsets)
        ):
            return False
    return True


def contract(z: Point, m: int) -> Point:
    """Map a level m*r numerator to the level r numerator containing it."""
    return tuple(zi // m for zi in z)


def refine_assignment(assignment: Mapping[Point, Point], m: int) -> dict[Point, Point]:
    """Pull a level-r assignment back along the contraction from level m*r."""
    out = {}
    for z, y in assignment.items():
        for w in block(z, m):
            out[w] = y
    return out


def cut_points(image: DigitalImage) -> list[Point]:
    """Points whose removal disconnects a connected image."""
    from mvtopo.grid import is_connected

    out = []
    for p in image.sorted_points:
        rest = image.points - {p}
        if rest and not is_connected(image, rest):
            out.append(p)
    return out


def union_of_blocks(points: Iterable[Point], r: int) -> frozenset[Point]:
    return frozenset(z for x in points for z in block(x, r))
