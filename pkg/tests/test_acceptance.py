"""Acceptance criteria, one test per criterion (criterion 4 is split in two).

Each test records a PASS/FAIL line; ``conftest.py`` prints them in the
terminal summary. Running this file directly prints the same lines.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from functools import lru_cache

import pytest

from mvtopo import (
    DigitalImage,
    InvalidInputError,
    MultiFn,
    PreconditionError,
    analyze,
    boundary,
    components,
    compose,
    const_component_surjection,
    const_total,
    cut_points,
    dist_to_set,
    extend_cp,
    extend_via_retraction,
    extend_weak,
    find_witness,
    image_of_set,
    is_connected,
    is_cp,
    is_retraction,
    is_strong,
    is_sv_continuous,
    is_weak,
    refine_witness,
    retract_boundary,
    retract_nearest,
    subdivide,
    verify_witness,
    wedge_fns,
    wedge_witness,
)
from mvtopo.grid import bfs_distances
from mvtopo.oracle import (
    all_multifns,
    composition_closure_scan,
    continuity_by_enumeration,
    cp_by_definition,
    wedge_piece_violations,
)

from universe import (
    CORNER_X,
    COLUMN_Y,
    I1,
    I2,
    SMALL_IMAGES,
    random_cp_leaning_multifn,
    random_image,
    random_wedge_pair,
    ring_function,
)

SEED = 20240601
N_RANDOM = 1000
UNIVERSE_RMAX = 2

CRITERIA = {
    1: "interval fixture table",
    2: "retraction fixtures",
    3: "oracle equivalence",
    4: "invariant suites",
    5: "constructor guarantees",
    6: "subdivision fixture",
    7: "composition closure scan",
}

# criterion -> list of (check name, ok, detail)
RESULTS: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, name: str, ok: bool, detail: str = "") -> bool:
    RESULTS.setdefault(criterion, []).append((name, bool(ok), detail))
    return ok


def summary_lines() -> list[str]:
    lines = []
    for k in sorted(RESULTS):
        checks = RESULTS[k]
        ok = all(c[1] for c in checks)
        failed = [c for c in checks if not c[1]]
        body = "; ".join(f"{n}: {d}" if d else n for n, _, d in (failed or checks))
        lines.append(f"[{'PASS' if ok else 'FAIL'}] criterion {k} ({CRITERIA[k]}): {body}")
    return lines


def check_all(criterion: int) -> None:
    bad = [f"{n} ({d})" for n, ok, d in RESULTS.get(criterion, []) if not ok]
    assert not bad, "; ".join(bad)


# ---------------------------------------------------------------- instance universe


@lru_cache(maxsize=1)
def universe_functions() -> list[tuple[MultiFn, tuple[bool, bool, bool], object]]:
    """Every function between two fixture images, with (weak, strong, cp) and a witness or None."""
    out = []
    for X, Y in itertools.product(SMALL_IMAGES.values(), repeat=2):
        for F in all_multifns(X, Y):
            out.append((F, (is_weak(F), is_strong(F), is_cp(F)), find_witness(F, UNIVERSE_RMAX)))
    return out


@lru_cache(maxsize=1)
def random_instances() -> list[tuple[MultiFn, MultiFn]]:
    """Seeded composable pairs F: X -o Y, G: Y -o W with at most 6 points per image."""
    rng = random.Random(SEED)
    out = []
    for _ in range(N_RANDOM):
        X, Y, W = (random_image(rng, 6, connected=rng.random() < 0.7) for _ in range(3))
        out.append((random_cp_leaning_multifn(rng, X, Y), random_cp_leaning_multifn(rng, Y, W)))
    return out


def classes_of(F: MultiFn) -> tuple[bool, bool, bool, bool]:
    w = find_witness(F, UNIVERSE_RMAX)
    return is_weak(F), is_strong(F), is_cp(F), w is not None


# ---------------------------------------------------------------- criterion 1


FIXTURE_TABLE = [
    # (F(0), F(1)), weak, strong, cp, witness level or None
    (({0, 2}, {1}), True, True, False, None),
    (({0, 1}, {2}), True, False, True, 2),
    (({0}, {1, 2}), True, False, True, 2),
    (({1}, {0, 2}), True, True, False, None),
]


def test_criterion_1_interval_fixtures():
    for (f0, f1), weak, strong, cp, level in FIXTURE_TABLE:
        F = MultiFn(I1, I2, {0: f0, 1: f1})
        rep = analyze(F, 4)
        got = (rep.weak, rep.strong, rep.connectivity_preserving, rep.continuous.level if rep.continuous.found else None)
        ok = got == (weak, strong, cp, level)
        if level is None:
            # no witness is certified only by a disconnected point-image
            ok = ok and rep.refuted and rep.continuous.status == "not-found"
        else:
            ok = ok and verify_witness(F, rep.witness) and continuity_by_enumeration(F, level)
            ok = ok and not continuity_by_enumeration(F, level - 1) if level > 1 else ok
        record(1, f"F(0)={sorted(f0)},F(1)={sorted(f1)}", ok, f"weak={rep.weak} strong={rep.strong} cp={rep.connectivity_preserving} continuous={rep.continuous.status}({rep.continuous.level})")
    check_all(1)


# ---------------------------------------------------------------- criterion 2


def test_criterion_2_retractions():
    I4 = DigitalImage.interval(0, 4)
    R = retract_nearest(I4, {0, 4})
    record(
        2,
        "nearest",
        R(1) == {(0,)} and R(2) == {(0,), (4,)} and is_weak(R) and not is_strong(R),
        f"f(1)={sorted(R(1))} f(2)={sorted(R(2))} weak={is_weak(R)} strong={is_strong(R)}",
    )
    B = retract_boundary(I4, {1, 2, 3})
    record(
        2,
        "boundary",
        B(0) == B(4) == {(1,), (3,)} and is_weak(B) and not is_strong(B),
        f"g(0)={sorted(B(0))} weak={is_weak(B)} strong={is_strong(B)}",
    )
    check_all(2)


# ---------------------------------------------------------------- criterion 3


def test_criterion_3_oracle_equivalence():
    mism = sum(is_cp(F) != cp_by_definition(F) for F in all_multifns(I2, I2))
    record(3, "is_cp vs definition on [0,2]->[0,2]", mism == 0, f"343 functions, {mism} mismatches")

    cp_mism = witness_mism = checked = 0
    for F, (_, _, cp), _ in universe_functions():
        cp_mism += cp != cp_by_definition(F)
        for r in (1, 2):
            checked += 1
            witness_mism += (find_witness(F, r) is not None) != continuity_by_enumeration(F, r)
    n = len(universe_functions())
    record(3, "is_cp vs definition on fixture universe", cp_mism == 0, f"{n} functions, {cp_mism} mismatches")
    record(3, "find_witness vs enumeration, r in {1,2}", witness_mism == 0, f"{checked} cases, {witness_mism} mismatches")
    check_all(3)


# ---------------------------------------------------------------- criterion 4


def _lipschitz_violations(X: DigitalImage) -> int:
    bad = 0
    pts = X.sorted_points
    for k in range(1, len(pts) + 1):
        for A in itertools.combinations(pts, k):
            d = bfs_distances(X, A)
            for x, y in X.edges():
                if x in d and y in d:
                    bad += abs(d[x] - d[y]) > 1
                    bad += d[x] != dist_to_set(X, x, A)
    return bad


def _wedge_fn(rng, X, Y, x0, y0):
    F = random_cp_leaning_multifn(rng, X, Y)
    table = dict(F.mapping)
    table[x0] = {y0}
    return MultiFn(X, Y, table)


def test_criterion_4_invariants():
    # class inclusions over the universe and the random instances
    inclusion_bad = 0
    found = 0
    for F, (weak, strong, cp), w in universe_functions():
        inclusion_bad += strong and not weak
        if w is not None:
            found += 1
            inclusion_bad += not (cp and weak and verify_witness(F, w))
    rand = random_instances()
    rand_classes = {}
    for F, G in rand:
        for H in (F, G, compose(F, G)):
            if id(H) not in rand_classes:
                c = rand_classes[id(H)] = classes_of(H)
                inclusion_bad += c[1] and not c[0]
                inclusion_bad += c[3] and not (c[2] and c[0])
    record(4, "strong=>weak, witness=>cp and weak", inclusion_bad == 0, f"{inclusion_bad} violations, {found} universe witnesses")

    # composition closure: every fixture triple exhaustively, then the random pairs
    shared: dict = {}
    premises, violations = Counter(), Counter()
    for X, Y, W in itertools.product(SMALL_IMAGES.values(), repeat=3):
        scan = composition_closure_scan(X, Y, W, r_max=UNIVERSE_RMAX, classes=shared)
        premises.update(scan.premises)
        violations.update(scan.violations)
    for F, G in rand:
        cf, cg = classes_of(F), classes_of(G)
        ch = classes_of(compose(F, G))
        for k, name in enumerate(("weak", "strong", "cp")):
            if cf[k] and cg[k]:
                premises[name] += 1
                violations[name] += not ch[k]
    bad = sum(violations.values())
    record(
        4,
        "composition closure (weak, strong, cp)",
        bad == 0,
        f"premises weak={premises['weak']} strong={premises['strong']} cp={premises['cp']}, {bad} violations",
    )

    # Lipschitz bound on distance to a set
    lip_bad = sum(_lipschitz_violations(X) for X in SMALL_IMAGES.values())
    rng = random.Random(SEED + 1)
    for _ in range(N_RANDOM):
        lip_bad += _lipschitz_violations(random_image(rng, 6))
    record(4, "Lipschitz bound", lip_bad == 0, f"{lip_bad} violations")

    # wedge preservation of all four classes
    rng = random.Random(SEED + 2)
    wedge_prem, wedge_bad = Counter(), 0
    for _ in range(400):
        X, Xp, x0 = random_wedge_pair(rng)
        Y, Yp, y0 = random_wedge_pair(rng)
        F, Fp = _wedge_fn(rng, X, Y, x0, y0), _wedge_fn(rng, Xp, Yp, x0, y0)
        H = wedge_fns(F, Fp)
        for name, test in (("weak", is_weak), ("strong", is_strong), ("cp", is_cp)):
            if test(F) and test(Fp):
                wedge_prem[name] += 1
                wedge_bad += not test(H)
        w, wp = find_witness(F, UNIVERSE_RMAX), find_witness(Fp, UNIVERSE_RMAX)
        if w is not None and wp is not None:
            wedge_prem["continuous"] += 1
            wedge_bad += not verify_witness(H, wedge_witness(F, w, Fp, wp))
    record(
        4,
        "wedge preservation",
        wedge_bad == 0 and all(wedge_prem[k] for k in ("weak", "strong", "cp", "continuous")),
        f"premises {dict(sorted(wedge_prem.items()))}, {wedge_bad} violations",
    )

    # the valid forms of the wedge piece claim: A connected implies both pieces connected,
    # and the converse holds whenever A contains the wedge point or misses a piece
    sound_bad = 0
    for X, Xp in SEGMENT_WEDGES:
        W = DigitalImage(X.adjacency, X.points | Xp.points)
        (x0,) = X.points & Xp.points
        for A in _subsets(W.sorted_points):
            a, ap = A & X.points, A & Xp.points
            pieces = is_connected(W, a) and is_connected(W, ap)
            if is_connected(W, A):
                sound_bad += not pieces
            elif x0 in A or not (a - {x0}) or not (ap - {x0}):
                sound_bad += pieces
    record(4, "wedge pieces (forward; converse with x0 in A)", sound_bad == 0, f"{sound_bad} violations")
    check_all(4)


def _segment(points, u):
    return DigitalImage.from_points(points, u=u)


SEGMENT_WEDGES = [
    (_segment([0, 1, 2, 3], 1), _segment([3, 4, 5, 6], 1)),
    (_segment([(i, 0) for i in range(4)], 1), _segment([(i, 0) for i in range(3, 7)], 1)),
    (_segment([(i, 0) for i in range(4)], 1), _segment([(3, j) for j in range(4)], 1)),
    (_segment([(i, i) for i in range(4)], 2), _segment([(i, i) for i in range(3, 7)], 2)),
    (_segment([(i, 0) for i in range(4)], 2), _segment([(3 + i, i) for i in range(4)], 2)),
]


def _subsets(pts):
    for k in range(len(pts) + 1):
        for A in itertools.combinations(pts, k):
            yield frozenset(A)


@pytest.mark.xfail(
    strict=True,
    reason="the two-sided subset equivalence fails for sets that avoid the wedge point "
    "(e.g. the two far ends); see the decisions ledger",
)
def test_criterion_4_wedge_pieces_two_sided():
    total = 0
    example = None
    for X, Xp in SEGMENT_WEDGES:
        bad = wedge_piece_violations(X, Xp)
        total += len(bad)
        if bad and example is None:
            example = sorted(min(bad, key=len))
    record(
        4,
        "wedge pieces two-sided equivalence",
        total == 0,
        f"{total} counterexample subsets over {len(SEGMENT_WEDGES)} wedges of 4-point segments, e.g. A={example}",
    )
    check_all(4)


# ---------------------------------------------------------------- criterion 5


def _supersets(X0: DigitalImage) -> list[DigitalImage]:
    """X0 itself, X0 with its lattice neighbors, and that plus a far-away point."""
    ring = set(X0.points)
    for p in X0.points:
        ring.update(tuple(a + b for a, b in zip(p, off)) for off in X0.adjacency.offsets)
    far = tuple(c + 9 for c in max(X0.points))
    grown = DigitalImage(X0.adjacency, frozenset(ring))
    return [X0, grown, DigitalImage(X0.adjacency, frozenset(ring | {far}))]


def _extension_cases():
    for X0 in SMALL_IMAGES.values():
        supers = _supersets(X0)
        for Y in SMALL_IMAGES.values():
            for F in all_multifns(X0, Y):
                for X in supers:
                    yield F, X
    rng = random.Random(SEED + 3)
    for _ in range(N_RANDOM):
        X = random_image(rng, 6)
        k = rng.randint(1, len(X))
        X0 = X.restrict(rng.sample(X.sorted_points, k))
        Y = random_image(rng, 6)
        yield random_cp_leaning_multifn(rng, X0, Y), X


def _fill_hypothesis(F: MultiFn, X: DigitalImage, variant: str) -> bool:
    X0, Y = F.domain.points, F.codomain
    if not is_cp(F):
        return False
    if variant == "fill-codomain":
        return is_connected(Y, Y.points)
    if variant == "fill-image":
        return is_connected(Y, image_of_set(F, X0))
    bd = boundary(X, X0)
    if X0 != X.points and not bd:
        return False
    return is_connected(Y, image_of_set(F, bd))


def _raises_precondition(fn, *args) -> bool:
    try:
        fn(*args)
    except PreconditionError:
        return True
    return False


def test_criterion_5_constructors():
    counts, bad = Counter(), Counter()
    for F, X in _extension_cases():
        if is_weak(F):
            G = extend_weak(F, X)
            counts["extend_weak"] += 1
            bad["extend_weak"] += not (is_weak(G) and all(G.mapping[x] == v for x, v in F.items()))
        else:
            bad["extend_weak"] += not _raises_precondition(extend_weak, F, X)
        for variant in ("fill-codomain", "fill-image", "fill-boundary-image"):
            if _fill_hypothesis(F, X, variant):
                G = extend_cp(F, X, variant)
                counts[variant] += 1
                bad[variant] += not (is_cp(G) and all(G.mapping[x] == v for x, v in F.items()))
            else:
                bad[variant] += not _raises_precondition(extend_cp, F, X, variant)

    # each variant's precondition error on a crafted instance
    I4 = DigitalImage.interval(0, 4)
    gap = DigitalImage.from_points([0, 2])
    crafted = [
        ("fill-codomain", MultiFn(DigitalImage.from_points([0]), gap, {0: {0}}), I1, "codomain Y is not connected"),
        ("fill-image", MultiFn(gap, I2, {0: {0}, 2: {2}}), I2, "F(X_0) is not connected"),
        ("fill-boundary-image", MultiFn.identity(DigitalImage.from_points([1, 2, 3])), I4, "Bd_X(X_0) image not connected"),
    ]
    for variant, F, X, message in crafted:
        try:
            extend_cp(F, X, variant)
            fired = False
        except PreconditionError as exc:
            fired = message in str(exc)
        bad[f"{variant} crafted"] += not fired

    # surjections, over every pair of fixture images and random pairs
    rng = random.Random(SEED + 4)
    pairs = list(itertools.product(SMALL_IMAGES.values(), repeat=2))
    pairs += [(random_image(rng, 6), random_image(rng, 6)) for _ in range(N_RANDOM)]
    for X, Y in pairs:
        T = const_total(X, Y)
        counts["const_total"] += 1
        bad["const_total"] += not (is_strong(T) and T.is_surjective() and is_cp(T) == is_connected(Y, Y.points))
        if len(components(X)) >= len(components(Y)):
            S = const_component_surjection(X, Y)
            counts["component_surjection"] += 1
            bad["component_surjection"] += not (is_strong(S) and is_cp(S) and S.is_surjective())
        else:
            bad["component_surjection"] += not _raises_precondition(const_component_surjection, X, Y)

    # retractions over every nonempty subset of connected fixture and random images
    images = [X for X in SMALL_IMAGES.values() if is_connected(X, X.points)]
    images += [random_image(rng, 5, connected=True) for _ in range(200)]
    for X in images:
        for A in _subsets(X.sorted_points):
            if not A:
                continue
            R = retract_nearest(X, A)
            counts["retract_nearest"] += 1
            bad["retract_nearest"] += not (is_weak(R) and is_retraction(R, A))
            if A != X.points and not boundary(X, A):
                bad["retract_boundary"] += not _raises_precondition(retract_boundary, X, A)
                continue
            B = retract_boundary(X, A)
            counts["retract_boundary"] += 1
            ok = is_weak(B) and is_retraction(B, A)
            if is_connected(X, boundary(X, A)):
                ok = ok and is_cp(B)
            bad["retract_boundary"] += not ok

    # extension through continuous retractions
    for X in [I2, DigitalImage.interval(0, 3), SMALL_IMAGES["L3c2"]]:
        for A in _subsets(X.sorted_points):
            if not A or not is_connected(X, A):
                continue
            Aimg = X.restrict(A)
            for R in all_multifns(X, Aimg):
                if not is_retraction(R, A):
                    continue
                w = find_witness(R, UNIVERSE_RMAX)
                if w is None:
                    continue
                for values in itertools.product(I1.sorted_points, repeat=len(A)):
                    f = dict(zip(Aimg.sorted_points, values))
                    if not is_sv_continuous(f, Aimg, I1):
                        continue
                    G, v = extend_via_retraction(R, w, f, I1)
                    counts["extend_via_retraction"] += 1
                    ok = verify_witness(G, v) and all(G.mapping[a] == {f[a]} for a in A)
                    bad["extend_via_retraction"] += not ok

    total_bad = sum(bad.values())
    record(5, "constructor outputs and precondition errors", total_bad == 0, f"built {dict(sorted(counts.items()))}; {total_bad} violations")
    check_all(5)


# ---------------------------------------------------------------- criterion 6


def test_criterion_6_subdivision():
    SX, SY = subdivide(CORNER_X, 2).image, subdivide(COLUMN_Y, 2).image
    cuts_x = [p for p in SX.sorted_points if not is_connected(SX, SX.points - {p})]
    cuts_y = [p for p in SY.sorted_points if not is_connected(SY, SY.points - {p})]
    record(6, "S(X,2) has a cut point", bool(cuts_x) and cuts_x == cut_points(SX), f"cut points {cuts_x}")
    record(6, "S(Y,2) has none", not cuts_y and is_connected(SY, SY.points), f"{len(SY)} points")

    refined = failures = 0
    for F, _, w in universe_functions():
        if w is None:
            continue
        for m in (2, 3):
            refined += 1
            failures += not verify_witness(F, refine_witness(w, m, F))
    record(6, "refine_witness m in {2,3}", failures == 0 and refined > 0, f"{refined} refinements, {failures} failures")
    check_all(6)


# ---------------------------------------------------------------- criterion 7


def test_criterion_7_closure_scan():
    scan = composition_closure_scan(I2, I2, I2, r_max=4)
    viol = sum(scan.violations.values())
    status = (
        f"{scan.non_closure_count} pairs with witnesses for F and G but none for G o F (inconclusive)"
        if scan.non_closure_count
        else "no non-closure pair at this size (inconclusive)"
    )
    record(
        7,
        "[0,2]^3 at r_max=4",
        viol == 0 and scan.pairs == 343**2,
        f"{scan.pairs} pairs, premises {dict(sorted(scan.premises.items()))}, {viol} violations; {status}",
    )
    check_all(7)


def test_hierarchy_strictness_evidence():
    """A connectivity preserving function with no witness up to level 4 (inconclusive)."""
    F = ring_function()
    rep = analyze(F, 4)
    assert rep.connectivity_preserving and rep.weak and not rep.strong
    assert rep.continuous.status == "not-found" and not rep.refuted


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for line in summary_lines():
        print(line)
