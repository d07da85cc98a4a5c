"""Exhaustive small-instance oracles.

Everything here works straight from the definitions, without the shortcuts
the deciders in :mod:`mvtopo.multifun` rely on:

* connectivity preservation is checked over every connected subset of the
  domain, not via the adjacency characterization;
* continuity at a fixed level is checked by materializing every assignment
  on the subdivision, with no backtracking or pruning;
* the census tallies the property classes of every multivalued function
  between two small images.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field

import numpy as np

from mvtopo import _kernels
from mvtopo.errors import InvalidInputError, ResourceLimitError
from mvtopo.grid import DigitalImage, Point, check_single_valued, is_connected
from mvtopo.multifun import DEFAULT_RMAX, MultiFn, analyze, find_witness, image_of_set, is_cp, is_strong, is_weak
from mvtopo.subdivision import block

CP_DEFINITION_MAX_POINTS = 20
ENUMERATION_CAP = 10**7
CENSUS_CAP = 10**6
PAIR_CAP = 10**7


def connected_subsets(image: DigitalImage) -> Iterator[frozenset[Point]]:
    """Every nonempty connected subset of the image, each exactly once.

    Sets are grown from their least point (in lexicographic order) by adding
    neighbors that come later in that order.
    """
    order = image.index
    table = image._neighbor_table

    def grow(current, extension, frontier_seen, root):
        yield frozenset(current)
        ext = sorted(extension, key=order.__getitem__)
        while ext:
            w = ext.pop()
            new_ext = set(ext)
            added = []
            for u in table[w]:
                if order[u] > order[root] and u not in frontier_seen:
                    new_ext.add(u)
                    added.append(u)
            frontier_seen.update(added)
            current.append(w)
            yield from grow(current, new_ext, frontier_seen, root)
            current.pop()
            frontier_seen.difference_update(added)

    for v in image.sorted_points:
        ext = {u for u in table[v] if order[u] > order[v]}
        seen = set(ext) | {v}
        yield from grow([v], ext, seen, v)


def cp_by_definition(F: MultiFn, max_points: int = CP_DEFINITION_MAX_POINTS) -> bool:
    """F(A) is connected for every connected A in the domain."""
    if len(F.domain) > max_points:
        raise ResourceLimitError(
            f"domain has {len(F.domain)} points; definition check is capped at {max_points}"
        )
    Y = F.codomain
    cache: dict[frozenset, bool] = {}
    for A in connected_subsets(F.domain):
        img = image_of_set(F, A)
        ok = cache.get(img)
        if ok is None:
            ok = cache[img] = is_connected(Y, img)
        if not ok:
            return False
    return True


def sv_continuous_by_definition(f: Mapping, X: DigitalImage, Y: DigitalImage, max_points: int = 12) -> bool:
    """The image of every connected subset is connected; all subsets are tried."""
    g = check_single_valued(f, X, Y)
    if len(X) > max_points:
        raise ResourceLimitError(f"domain has {len(X)} points; subset scan is capped at {max_points}")
    pts = X.sorted_points
    for k in range(2, len(pts) + 1):
        for A in itertools.combinations(pts, k):
            if is_connected(X, A) and not is_connected(Y, {g[a] for a in A}):
                return False
    return True


def _enumeration_problem(F: MultiFn, r: int):
    """Encode the level-r problem from scratch, testing adjacency pairwise."""
    base = F.domain.sorted_points
    pts = sorted(z for x in base for z in block(x, r))
    block_of = [base.index(tuple(zi // r for zi in z)) for z in pts]
    spec = F.domain.adjacency
    edge_u, edge_v = [], []
    for i, j in itertools.combinations(range(len(pts)), 2):
        if spec.adjacent(pts[i], pts[j]):
            edge_u.append(i)
            edge_v.append(j)
    ys = F.codomain.sorted_points
    yspec = F.codomain.adjacency
    n = len(ys)
    adj = np.array(
        [1 if a == b or yspec.adjacent(a, b) else 0 for a in ys for b in ys], dtype=np.uint8
    )
    cand = [sorted(ys.index(y) for y in F.mapping[x]) for x in base]
    cand_ptr, cand_idx = [0], []
    for b in block_of:
        cand_idx.extend(cand[b])
        cand_ptr.append(len(cand_idx))
    arr = lambda s: np.asarray(s, dtype=np.intc)  # noqa: E731
    radix = [len(cand[b]) for b in block_of]
    return (
        len(pts), arr(edge_u), arr(edge_v), arr(cand_ptr), arr(cand_idx), arr(block_of),
        arr([len(c) for c in cand]), n, adj,
    ), math.prod(radix)


def continuity_by_enumeration(
    F: MultiFn, r: int, cap: int = ENUMERATION_CAP, backend: str | None = None
) -> bool:
    """Whether some continuous map on S(domain, r) induces F, by exhaustive enumeration.

    Only assignments with f(z) in F(E_r(z)) are enumerated; no other
    assignment can induce F.
    """
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise InvalidInputError(f"subdivision level must be a positive integer, got {r!r}")
    args, size = _enumeration_problem(F, r)
    if size > cap:
        raise ResourceLimitError(f"{size} assignments to enumerate exceeds the cap of {cap}")
    kern = _kernels.get_backend(backend) if backend else _kernels
    return bool(kern.enumerate_inducing(*args))


def all_multifns(X: DigitalImage, Y: DigitalImage) -> Iterator[MultiFn]:
    """Every multivalued function X -o Y.

    Point-images are bitmasks over Y's points in lexicographic order; the
    product runs over X's points in lexicographic order, masks ascending.
    """
    ys = Y.sorted_points
    xs = X.sorted_points
    subsets = [frozenset(ys[i] for i in range(len(ys)) if m >> i & 1) for m in range(1, 1 << len(ys))]
    for combo in itertools.product(subsets, repeat=len(xs)):
        yield MultiFn(X, Y, dict(zip(xs, combo)))


def hom_count(X: DigitalImage, Y: DigitalImage) -> int:
    return ((1 << len(Y)) - 1) ** len(X)


def _check_cap(X, Y, cap):
    total = hom_count(X, Y)
    if total > cap:
        raise ResourceLimitError(f"{total} multivalued functions exceeds the census cap of {cap}")
    return total


@dataclass(frozen=True)
class Signature:
    weak: bool
    strong: bool
    cp: bool
    continuous: bool

    def as_dict(self) -> dict[str, bool]:
        return {"weak": self.weak, "strong": self.strong, "cp": self.cp, "continuous": self.continuous}


@dataclass
class CensusRecord:
    domain: DigitalImage
    codomain: DigitalImage
    r_max: int
    total: int = 0
    counts: Counter = field(default_factory=Counter)
    combos: dict[Signature, int] = field(default_factory=dict)
    representatives: dict[Signature, MultiFn] = field(default_factory=dict)
    cp_mismatches: int = 0

    def has(self, **flags) -> bool:
        """Whether some class combination matching ``flags`` is inhabited."""
        return any(all(getattr(s, k) == v for k, v in flags.items()) for s in self.combos)

    def first(self, **flags) -> MultiFn | None:
        for s in sorted(self.representatives, key=lambda s: _rep_key(self.representatives[s])):
            if all(getattr(s, k) == v for k, v in flags.items()):
                return self.representatives[s]
        return None


def _rep_key(F: MultiFn):
    return [sorted(fx) for _, fx in F.items()]


def census(X: DigitalImage, Y: DigitalImage, r_max: int = DEFAULT_RMAX, cap: int = CENSUS_CAP) -> CensusRecord:
    """Classify every multivalued function X -o Y."""
    rec = CensusRecord(X, Y, r_max)
    _check_cap(X, Y, cap)
    check_defn = len(X) <= CP_DEFINITION_MAX_POINTS
    for F in all_multifns(X, Y):
        rep = analyze(F, r_max)
        sig = Signature(rep.weak, rep.strong, rep.connectivity_preserving, rep.continuous.found)
        if check_defn and cp_by_definition(F) != rep.connectivity_preserving:
            rec.cp_mismatches += 1
        rec.total += 1
        for k, v in sig.as_dict().items():
            rec.counts[k] += v
        rec.combos[sig] = rec.combos.get(sig, 0) + 1
        rec.representatives.setdefault(sig, F)
    return rec


@dataclass
class ClosureScan:
    pairs: int = 0
    premises: Counter = field(default_factory=Counter)
    violations: Counter = field(default_factory=Counter)
    # (F, G) with witnesses for both and none for G o F up to r_max
    non_closure: list[tuple[MultiFn, MultiFn]] = field(default_factory=list)
    non_closure_count: int = 0
    r_max: int = DEFAULT_RMAX

    @property
    def closed(self) -> bool:
        return not any(self.violations.values())


def _classify(F: MultiFn, r_max: int) -> tuple[bool, bool, bool, bool]:
    weak = is_weak(F)
    cp = is_cp(F)
    return weak, is_strong(F), cp, cp and find_witness(F, r_max) is not None


def _classified_homs(X, Y, r_max, classes):
    key = (X, Y, r_max)
    if classes is not None and key in classes:
        return classes[key]
    fs = list(all_multifns(X, Y))
    out = fs, [_classify(F, r_max) for F in fs]
    if classes is not None:
        classes[key] = out
    return out


def composition_closure_scan(
    X: DigitalImage,
    Y: DigitalImage,
    W: DigitalImage,
    r_max: int = DEFAULT_RMAX,
    cap: int = CENSUS_CAP,
    pair_cap: int = PAIR_CAP,
    keep: int = 10,
    classes: dict | None = None,
) -> ClosureScan:
    """Check closure of each property under composition over all pairs F: X -o Y, G: Y -o W.

    ``classes`` may be a dict shared across calls; the classification of
    each hom-set is stored there and reused.
    """
    for a, b in ((X, Y), (Y, W), (X, W)):
        _check_cap(a, b, cap)
    pairs = hom_count(X, Y) * hom_count(Y, W)
    if pairs > pair_cap:
        raise ResourceLimitError(f"{pairs} pairs exceeds the scan cap of {pair_cap}")

    fs, f_cls = _classified_homs(X, Y, r_max, classes)
    gs, g_cls = _classified_homs(Y, W, r_max, classes)
    # every composite is itself a function X -o W, so classify that hom-set once
    hs, h_cls = _classified_homs(X, W, r_max, classes)

    ys, ws, xs = Y.sorted_points, W.sorted_points, X.sorted_points
    y_bit = {y: 1 << i for i, y in enumerate(ys)}
    w_bit = {w: 1 << i for i, w in enumerate(ws)}
    n_masks = 1 << len(ys)
    f_masks = np.array([[sum(y_bit[y] for y in F.mapping[x]) for x in xs] for F in fs], dtype=np.int64)
    f_masks = f_masks.reshape(len(fs), len(xs))
    # g_tab[g, m]: the image under G of the subset of Y with bitmask m, as a bitmask over W
    g_tab = np.zeros((len(gs), n_masks), dtype=np.int64)
    for gi, G in enumerate(gs):
        row = g_tab[gi]
        for m in range(1, n_masks):
            low = m & -m
            row[m] = row[m ^ low] | sum(w_bit[w] for w in G.mapping[ys[low.bit_length() - 1]])
    # position of a function X -o W in all_multifns order: last point varies fastest
    base = (1 << len(ws)) - 1
    place = np.array([base ** (len(xs) - 1 - j) for j in range(len(xs))], dtype=np.int64)
    f_arr = np.array(f_cls, dtype=bool).reshape(len(fs), 4)
    g_arr = np.array(g_cls, dtype=bool).reshape(len(gs), 4)
    h_arr = np.array(h_cls, dtype=bool).reshape(len(hs), 4)

    out = ClosureScan(pairs=len(fs) * len(gs), r_max=r_max)
    names = ("weak", "strong", "cp", "continuous")
    # strong, cp and continuity all imply weak, so only weak pairs carry a premise
    weak_g = np.flatnonzero(g_arr[:, 0])
    gw = g_arr[weak_g]
    gt = g_tab[weak_g]
    for fi in np.flatnonzero(f_arr[:, 0]):
        fc = f_arr[fi]
        composite = h_arr[(gt[:, f_masks[fi]] - 1) @ place]
        for k, name in enumerate(names):
            if not fc[k]:
                continue
            prem = gw[:, k]
            failed = prem & ~composite[:, k]
            out.premises[name] += int(prem.sum())
            if k < 3:
                out.violations[name] += int(failed.sum())
                continue
            out.non_closure_count += int(failed.sum())
            for j in np.flatnonzero(failed)[: max(0, keep - len(out.non_closure))]:
                out.non_closure.append((fs[fi], gs[weak_g[j]]))
    return out


def wedge_piece_violations(X: DigitalImage, Xp: DigitalImage) -> list[frozenset[Point]]:
    """Subsets A of X v X' for which "A connected" and "A meet X and A meet X'
    both connected" disagree. Exhaustive over all subsets."""
    from mvtopo.constructors import wedge_images

    W, _ = wedge_images(X, Xp)
    pts = W.sorted_points
    bad = []
    for k in range(len(pts) + 1):
        for A in itertools.combinations(pts, k):
            A = frozenset(A)
            whole = is_connected(W, A)
            pieces = is_connected(W, A & X.points) and is_connected(W, A & Xp.points)
            if whole != pieces:
                bad.append(A)
    return bad
