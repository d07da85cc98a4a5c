"""Structured multivalued functions: retractions, extensions, surjections, wedges.

Each builder checks the hypotheses its guarantee depends on and raises
:class:`~mvtopo.errors.PreconditionError` naming the one that fails.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from math import lcm

from mvtopo.errors import InvalidInputError, PreconditionError
from mvtopo.grid import (
    DigitalImage,
    Point,
    PointLike,
    as_point_set,
    boundary,
    check_single_valued,
    components,
    is_connected,
    is_sv_continuous,
    near_set,
)
from mvtopo.multifun import (
    ContinuityWitness,
    MultiFn,
    image_of_set,
    is_cp,
    is_weak,
    refine_witness,
    verify_witness,
)
from mvtopo.subdivision import floor_point

EXTEND_CP_VARIANTS = ("fill-codomain", "fill-image", "fill-boundary-image")


def is_retraction(F: MultiFn, A: Iterable[PointLike]) -> bool:
    """F(a) = {a} for every a in A, where A is F's codomain."""
    A = as_point_set(A)
    if F.codomain.points != A:
        raise InvalidInputError("a retraction onto A must have A as its codomain")
    if not A <= F.domain.points:
        raise InvalidInputError("A must be a subset of the domain")
    return all(F.mapping[a] == {a} for a in A)


def _subset_image(X: DigitalImage, A) -> tuple[frozenset[Point], DigitalImage]:
    A = X.check_subset(A)
    if not A:
        raise InvalidInputError("the subset A must be nonempty")
    return A, X.restrict(A)


def retract_nearest(X: DigitalImage, A: Iterable[PointLike]) -> MultiFn:
    """Weakly continuous retraction sending x outside A to the points of A
    at distance l or l+1, where l is the distance from x to A."""
    A, target = _subset_image(X, A)
    if not is_connected(X, X.points):
        raise InvalidInputError("X must be connected")
    table = {}
    for x in X.points:
        table[x] = {x} if x in A else near_set(X, x, A)
    return MultiFn(X, target, table)


def retract_boundary(X: DigitalImage, A: Iterable[PointLike]) -> MultiFn:
    """Weakly continuous retraction sending X minus A onto the boundary of A."""
    A, target = _subset_image(X, A)
    bd = boundary(X, A)
    if A != X.points and not bd:
        raise PreconditionError("Bd_X(A) is empty, so points outside A would have empty images")
    return MultiFn(X, target, {x: {x} if x in A else bd for x in X.points})


def const_total(X: DigitalImage, Y: DigitalImage) -> MultiFn:
    """x -> Y for every x: a strongly continuous surjection."""
    if not X.points or not Y.points:
        raise InvalidInputError("both images must be nonempty")
    return MultiFn(X, Y, {x: Y.points for x in X.points})


def const_component_surjection(X: DigitalImage, Y: DigitalImage) -> MultiFn:
    """Send the i-th component of X onto component i mod k of Y, where Y has k components."""
    cx = components(X)
    cy = components(Y)
    if not cy:
        raise InvalidInputError("codomain must be nonempty")
    if len(cx) < len(cy):
        raise PreconditionError(
            f"X has {len(cx)} components but Y has {len(cy)}; need at least as many in X"
        )
    table = {}
    for i, comp in enumerate(cx):
        target = cy[i % len(cy)]
        for x in comp:
            table[x] = target
    return MultiFn(X, Y, table)


def _check_extension_base(F: MultiFn, X: DigitalImage) -> frozenset[Point]:
    X0 = F.domain.points
    if F.domain.adjacency != X.adjacency:
        raise InvalidInputError("X must carry the same adjacency as the domain of F")
    if not X0 <= X.points:
        raise InvalidInputError("domain of F is not a subset of X")
    if not X0:
        raise InvalidInputError("domain of F must be nonempty")
    return X0


def _extend(F: MultiFn, X: DigitalImage, fill: frozenset[Point]) -> MultiFn:
    table = dict(F.mapping)
    for x in X.points - F.domain.points:
        table[x] = fill
    return MultiFn(X, F.codomain, table)


def extend_weak(F: MultiFn, X: DigitalImage) -> MultiFn:
    """Extend a weakly continuous F on X0 to X by sending new points to F(X0)."""
    X0 = _check_extension_base(F, X)
    if not is_weak(F):
        raise PreconditionError("F is not weakly continuous")
    return _extend(F, X, image_of_set(F, X0))


def extend_cp(F: MultiFn, X: DigitalImage, variant: str = "fill-image") -> MultiFn:
    """Connectivity preserving extension of a connectivity preserving F.

    Points of X outside X0 are sent to the whole codomain, to F(X0), or
    to F(Bd_X(X0)) according to ``variant``. Each variant requires its
    fill set to be connected.
    """
    X0 = _check_extension_base(F, X)
    if variant not in EXTEND_CP_VARIANTS:
        raise InvalidInputError(f"unknown variant {variant!r}; choose from {EXTEND_CP_VARIANTS}")
    if not is_cp(F):
        raise PreconditionError("F is not connectivity preserving")
    Y = F.codomain
    if variant == "fill-codomain":
        fill = Y.points
        if not is_connected(Y, fill):
            raise PreconditionError("codomain Y is not connected")
    elif variant == "fill-image":
        fill = image_of_set(F, X0)
        if not is_connected(Y, fill):
            raise PreconditionError("F(X_0) is not connected")
    else:
        bd = boundary(X, X0)
        if X0 != X.points and not bd:
            raise PreconditionError("Bd_X(X_0) is empty, so points outside X_0 would have empty images")
        fill = image_of_set(F, bd)
        if not is_connected(Y, fill):
            raise PreconditionError("Bd_X(X_0) image not connected")
    return _extend(F, X, fill)


def extend_via_retraction(
    R: MultiFn,
    witness: ContinuityWitness | None,
    f: Mapping,
    Y: DigitalImage,
) -> tuple[MultiFn, ContinuityWitness]:
    """Extend a continuous f: A -> Y over X through a continuous retraction R: X -o A.

    The extension is induced by z -> f(R'(z)), where R' is the witness map
    of R on S(X, r).
    """
    A = R.codomain
    if witness is None:
        raise InvalidInputError("a continuity witness for the retraction is required")
    if not is_retraction(R, A.points):
        raise PreconditionError("R is not a retraction")
    if not verify_witness(R, witness):
        raise InvalidInputError("the supplied witness does not generate R")
    g = check_single_valued(f, A, Y)
    if not is_sv_continuous(g, A, Y):
        raise PreconditionError("f is not continuous")
    composite = {z: g[a] for z, a in witness.assignment.items()}
    w = ContinuityWitness(witness.level, composite)
    table: dict[Point, set] = {x: set() for x in R.domain.points}
    for z, y in composite.items():
        table[floor_point(z, witness.level)].add(y)
    return MultiFn(R.domain, Y, table), w


def wedge_images(X: DigitalImage, Xp: DigitalImage) -> tuple[DigitalImage, Point]:
    """The wedge X v X' and its wedge point.

    Besides meeting in exactly one point, no point of X other than the
    wedge point may be adjacent to a point of X' other than the wedge point.
    """
    if X.adjacency != Xp.adjacency:
        raise InvalidInputError("not a wedge: the images carry different adjacencies")
    common = X.points & Xp.points
    if len(common) != 1:
        raise InvalidInputError(f"not a wedge: images share {len(common)} points, need exactly 1")
    (x0,) = common
    W = DigitalImage(X.adjacency, X.points | Xp.points)
    rest = Xp.points - {x0}
    for x in X.points - {x0}:
        if not W.neighbors(x).isdisjoint(rest):
            raise InvalidInputError(f"not a wedge: {x} is adjacent to the other piece away from the wedge point")
    return W, x0


def wedge_fns(F: MultiFn, Fp: MultiFn) -> MultiFn:
    """F v F' on X v X', into Y v Y'; requires F(x0) = {y0} = F'(x0)."""
    W, x0 = wedge_images(F.domain, Fp.domain)
    V, y0 = wedge_images(F.codomain, Fp.codomain)
    if F.mapping[x0] != {y0}:
        raise PreconditionError(f"F(x0) must equal {{y0}} = {{{y0}}}")
    if Fp.mapping[x0] != {y0}:
        raise PreconditionError(f"F'(x0) must equal {{y0}} = {{{y0}}}")
    table = dict(F.mapping)
    table.update(Fp.mapping)
    return MultiFn(W, V, table)


def wedge_witness(
    F: MultiFn, w: ContinuityWitness, Fp: MultiFn, wp: ContinuityWitness
) -> ContinuityWitness:
    """Glue witnesses of F and F' into a witness of F v F'.

    Both are first refined to the least common level; the glued map is
    well defined because both send the wedge point's block to y0.
    """
    level = lcm(w.level, wp.level)
    a = refine_witness(w, level // w.level, F)
    b = refine_witness(wp, level // wp.level, Fp)
    glued = dict(a.assignment)
    for z, y in b.assignment.items():
        if glued.setdefault(z, y) != y:
            raise PreconditionError("witnesses disagree on the wedge point's block")
    return ContinuityWitness(level, glued)
