"""Multivalued functions between digital images and the properties they may have.

``F: X -o Y`` assigns each point of X a nonempty subset of Y. The deciders
here check four properties:

* weak continuity: adjacent points have adjacent point-images;
* strong continuity: for adjacent points, every value of one is
  adjacent-or-equal to some value of the other;
* connectivity preservation: weak continuity plus connected point-images;
* continuity: F is induced by a continuous single-valued map on some
  subdivision S(X, r). This one is only semi-decided, by a bounded search.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Optional

import numpy as np

from mvtopo import _kernels
from mvtopo.errors import InvalidInputError
from mvtopo.grid import (
    DigitalImage,
    Point,
    PointLike,
    adjacent_or_equal,
    as_point,
    as_point_set,
    is_connected,
    sets_adjacent,
)
from mvtopo.subdivision import floor_point, refine_assignment, subdivide

DEFAULT_RMAX = 4


@dataclass(frozen=True, eq=False)
class MultiFn:
    """A total assignment of nonempty codomain subsets to domain points."""

    domain: DigitalImage
    codomain: DigitalImage
    mapping: Mapping[Point, frozenset[Point]] = field(repr=False)

    def __post_init__(self):
        table = {}
        for x, fx in self.mapping.items():
            x = as_point(x)
            if x in table:
                raise InvalidInputError(f"point {x} is assigned twice")
            table[x] = as_point_set(fx)
        missing = self.domain.points - table.keys()
        if missing:
            raise InvalidInputError(f"multivalued function is not total; missing {sorted(missing)[:5]}")
        extra = table.keys() - self.domain.points
        if extra:
            raise InvalidInputError(f"points {sorted(extra)[:5]} are not in the domain")
        for x, fx in table.items():
            if not fx:
                raise InvalidInputError(f"point-image of {x} is empty")
            if not fx <= self.codomain.points:
                stray = sorted(fx - self.codomain.points)
                raise InvalidInputError(f"point-image of {x} leaves the codomain at {stray[:5]}")
        object.__setattr__(self, "mapping", MappingProxyType(table))

    @classmethod
    def singleton(cls, domain: DigitalImage, codomain: DigitalImage, f: Mapping) -> MultiFn:
        """The multivalued function x -> {f(x)}."""
        return cls(domain, codomain, {x: [v] for x, v in f.items()})

    @classmethod
    def identity(cls, image: DigitalImage) -> MultiFn:
        return cls(image, image, {x: [x] for x in image.points})

    def __call__(self, x: PointLike) -> frozenset[Point]:
        x = as_point(x)
        try:
            return self.mapping[x]
        except KeyError:
            raise InvalidInputError(f"point {x} is not in the domain") from None

    def __eq__(self, other):
        if not isinstance(other, MultiFn):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and dict(self.mapping) == dict(other.mapping)
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, frozenset(self.mapping.items())))

    def __repr__(self):
        body = ", ".join(f"{_fmt(x)}: {{{', '.join(_fmt(y) for y in sorted(self.mapping[x]))}}}"
                         for x in self.domain.sorted_points)
        return f"MultiFn({body})"

    def items(self):
        """(x, F(x)) pairs in lexicographic order of x."""
        return [(x, self.mapping[x]) for x in self.domain.sorted_points]

    def image(self) -> frozenset[Point]:
        return image_of_set(self, self.domain.points)

    def is_surjective(self) -> bool:
        return self.image() == self.codomain.points


def _fmt(p: Point) -> str:
    return str(p[0]) if len(p) == 1 else str(p)


@dataclass(frozen=True, eq=False)
class ContinuityWitness:
    """A subdivision level and a single-valued map on S(domain, level)."""

    level: int
    assignment: Mapping[Point, Point] = field(repr=False)

    def __post_init__(self):
        if isinstance(self.level, bool) or not isinstance(self.level, int) or self.level < 1:
            raise InvalidInputError(f"witness level must be a positive integer, got {self.level!r}")
        table = {as_point(z): as_point(y) for z, y in self.assignment.items()}
        object.__setattr__(self, "assignment", MappingProxyType(table))

    def __eq__(self, other):
        if not isinstance(other, ContinuityWitness):
            return NotImplemented
        return self.level == other.level and dict(self.assignment) == dict(other.assignment)

    def __hash__(self):
        return hash((self.level, frozenset(self.assignment.items())))

    def __repr__(self):
        return f"ContinuityWitness(level={self.level}, points={len(self.assignment)})"


@dataclass(frozen=True)
class Continuity:
    """Outcome of the bounded witness search.

    ``status`` is ``"witness-found"`` (``level`` is the witness level),
    ``"not-found"`` (``level`` is the largest level searched), or
    ``"not-applicable"`` when no search was run.
    """

    status: str
    level: Optional[int] = None

    @property
    def found(self) -> bool:
        return self.status == "witness-found"


@dataclass(frozen=True)
class PropertyReport:
    weak: bool
    strong: bool
    connectivity_preserving: bool
    continuous: Continuity
    witness: Optional[ContinuityWitness] = None
    # some point-image is disconnected, which rules out continuity outright
    refuted: bool = False


def _check_subset_of_domain(F: MultiFn, A) -> frozenset[Point]:
    A = as_point_set(A)
    stray = A - F.domain.points
    if stray:
        raise InvalidInputError(f"points {sorted(stray)[:5]} are not in the domain")
    return A


def image_of_set(F: MultiFn, A: Iterable[PointLike]) -> frozenset[Point]:
    A = _check_subset_of_domain(F, A)
    out = set()
    for x in A:
        out |= F.mapping[x]
    return frozenset(out)


def is_weak(F: MultiFn) -> bool:
    Y = F.codomain
    return all(sets_adjacent(Y, F.mapping[x], F.mapping[y]) for x, y in F.domain.edges())


def _covers(spec, A, B) -> bool:
    """Every point of A is adjacent or equal to some point of B."""
    return all(any(adjacent_or_equal(spec, a, b) for b in B) for a in A)


def is_strong(F: MultiFn) -> bool:
    spec = F.codomain.adjacency
    for x, y in F.domain.edges():
        fx, fy = F.mapping[x], F.mapping[y]
        if not (_covers(spec, fx, fy) and _covers(spec, fy, fx)):
            return False
    return True


def point_images_connected(F: MultiFn) -> bool:
    Y = F.codomain
    return all(is_connected(Y, fx) for fx in F.mapping.values())


def is_cp(F: MultiFn) -> bool:
    """Connectivity preservation, decided by its adjacency characterization."""
    return point_images_connected(F) and is_weak(F)


def _frozen(seq, dtype=np.intc) -> np.ndarray:
    a = np.asarray(seq, dtype=dtype)
    a.setflags(write=False)
    return a


@lru_cache(maxsize=256)
def _geometry(X: DigitalImage, r: int):
    """Points of S(X, r) in lexicographic order, their blocks, and earlier-neighbor lists."""
    S = subdivide(X, r).image
    pts = S.sorted_points
    idx = S.index
    dom_idx = X.index
    block_of = [dom_idx[floor_point(z, r)] for z in pts]
    nbr_ptr = [0]
    nbr_idx = []
    edge_v = []
    table = S._neighbor_table
    for i, z in enumerate(pts):
        earlier = sorted(idx[w] for w in table[z] if idx[w] < i)
        nbr_idx.extend(earlier)
        nbr_ptr.append(len(nbr_idx))
        edge_v.extend([i] * len(earlier))
    return pts, _frozen(block_of), _frozen(nbr_ptr), _frozen(nbr_idx), _frozen(edge_v)


@lru_cache(maxsize=256)
def _value_table(Y: DigitalImage):
    """Codomain points in order and the flattened adjacent-or-equal matrix."""
    ys = Y.sorted_points
    n = len(ys)
    spec = Y.adjacency
    adj = [adjacent_or_equal(spec, a, b) for a in ys for b in ys]
    return ys, _frozen(adj, np.uint8)


def encode_problem(F: MultiFn, r: int):
    """Integer encoding of the witness search on S(domain, r); see :mod:`mvtopo._kernels._pure`."""
    pts, block_of, nbr_ptr, nbr_idx, edge_v = _geometry(F.domain, r)
    ys, adj = _value_table(F.codomain)
    y_idx = F.codomain.index
    cand_lists = [sorted(y_idx[y] for y in F.mapping[x]) for x in F.domain.sorted_points]
    cand_ptr = [0]
    cand_idx = []
    for b in block_of:
        cand_idx.extend(cand_lists[b])
        cand_ptr.append(len(cand_idx))
    return {
        "points": pts,
        "values": ys,
        "n_points": len(pts),
        "nbr_ptr": nbr_ptr,
        "nbr_idx": nbr_idx,
        "edge_u": nbr_idx,
        "edge_v": edge_v,
        "cand_ptr": _frozen(cand_ptr),
        "cand_idx": _frozen(cand_idx),
        "block_of": block_of,
        "need": _frozen([len(c) for c in cand_lists]),
        "n_values": len(ys),
        "adj_eq": adj,
    }


def search_level(F: MultiFn, r: int, backend: str | None = None) -> Optional[ContinuityWitness]:
    """Backtracking search for a witness at exactly level ``r``."""
    kern = _kernels.get_backend(backend) if backend else _kernels
    p = encode_problem(F, r)
    assign = kern.search_witness(
        p["n_points"], p["nbr_ptr"], p["nbr_idx"], p["cand_ptr"], p["cand_idx"],
        p["block_of"], p["need"], p["n_values"], p["adj_eq"],
    )
    if assign is None:
        return None
    ys = p["values"]
    return ContinuityWitness(r, {z: ys[v] for z, v in zip(p["points"], assign)})


def _check_rmax(r_max) -> int:
    if isinstance(r_max, bool) or not isinstance(r_max, int) or r_max < 1:
        raise InvalidInputError(f"r_max must be a positive integer, got {r_max!r}")
    return r_max


def find_witness(F: MultiFn, r_max: int = DEFAULT_RMAX, backend: str | None = None) -> Optional[ContinuityWitness]:
    """Lexicographically first witness at the least level r <= r_max, or None.

    None means only that no witness exists up to ``r_max``; it is a proof of
    discontinuity only when some point-image is disconnected.
    """
    r_max = _check_rmax(r_max)
    if not point_images_connected(F):
        return None
    for r in range(1, r_max + 1):
        w = search_level(F, r, backend)
        if w is not None:
            return w
    return None


def verify_witness(F: MultiFn, w: ContinuityWitness) -> bool:
    """Whether ``w`` is continuous on S(domain, level) and induces exactly F."""
    S = subdivide(F.domain, w.level).image
    g = w.assignment
    if g.keys() != S.points:
        return False
    Y = F.codomain
    if any(y not in Y.points for y in g.values()):
        return False
    spec = Y.adjacency
    if not all(adjacent_or_equal(spec, g[a], g[b]) for a, b in S.edges()):
        return False
    induced: dict[Point, set] = {x: set() for x in F.domain.points}
    for z, y in g.items():
        induced[floor_point(z, w.level)].add(y)
    return all(induced[x] == F.mapping[x] for x in F.domain.points)


def refine_witness(w: ContinuityWitness, m: int, F: MultiFn | None = None) -> ContinuityWitness:
    """Re-express a level-r witness at level m*r by pulling back along z -> floor(z/m).

    When ``F`` is given, the input witness is verified against it first.
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InvalidInputError(f"refinement factor must be a positive integer, got {m!r}")
    if F is not None and not verify_witness(F, w):
        raise InvalidInputError("input witness does not verify")
    if m == 1:
        return w
    return ContinuityWitness(w.level * m, refine_assignment(w.assignment, m))


def compose(F: MultiFn, G: MultiFn) -> MultiFn:
    """G o F: x -> union of G(y) over y in F(x)."""
    if F.codomain != G.domain:
        raise InvalidInputError("codomain of the first function must equal the domain of the second")
    return MultiFn(F.domain, G.codomain, {x: image_of_set(G, fx) for x, fx in F.mapping.items()})


def analyze(F: MultiFn, r_max: int | None = DEFAULT_RMAX, backend: str | None = None) -> PropertyReport:
    """Run every decider; ``r_max=None`` skips the witness search."""
    weak = is_weak(F)
    strong = is_strong(F)
    connected = point_images_connected(F)
    cp = connected and weak
    witness = None
    if r_max is None:
        cont = Continuity("not-applicable")
    else:
        witness = find_witness(F, r_max, backend)
        cont = Continuity("witness-found", witness.level) if witness else Continuity("not-found", r_max)
    return PropertyReport(weak, strong, cp, cont, witness, refuted=not connected)

