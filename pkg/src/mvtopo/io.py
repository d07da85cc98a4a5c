"""Canonical JSON documents for images, multivalued functions, witnesses, reports and censuses.

Every document is a JSON object with ``kind`` and ``version`` keys. Point
lists are sorted lexicographically and keys are sorted, so equal values
serialize to byte-identical text.
"""

from __future__ import annotations

import json
from collections import Counter
from typing import Any, Union

from mvtopo.errors import InvalidInputError, ParseError
from mvtopo.grid import AdjacencySpec, DigitalImage, Point
from mvtopo.multifun import Continuity, ContinuityWitness, MultiFn, PropertyReport
from mvtopo.oracle import CensusRecord, Signature
from mvtopo.subdivision import SubdividedImage, subdivide

VERSION = "1"
KINDS = ("image", "multifn", "witness", "report", "census")

Source = Union[str, bytes, dict]


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_document(src: Source, kind: str | None = None) -> dict:
    """Decode ``src`` (JSON text or an already-decoded dict) and check its kind."""
    if isinstance(src, (str, bytes)):
        try:
            doc = json.loads(src)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    else:
        doc = src
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if kind is not None:
        got = doc.get("kind")
        if got != kind:
            raise ParseError(f"expected a {kind!r} document, got kind={got!r}")
        version = doc.get("version")
        if version != VERSION:
            raise ParseError(f"unsupported {kind} document version {version!r}")
    return doc


def _field(doc: dict, name: str, ctx: str):
    try:
        return doc[name]
    except KeyError:
        raise ParseError(f"{ctx}: missing field {name!r}") from None


def _int(value, ctx: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{ctx}: expected an integer, got {value!r}")
    return value


def _bool(value, ctx: str) -> bool:
    if not isinstance(value, bool):
        raise ParseError(f"{ctx}: expected true or false, got {value!r}")
    return value


def _point(value, dim: int | None, ctx: str) -> Point:
    if not isinstance(value, list):
        raise ParseError(f"{ctx}: a point must be a list of integers, got {value!r}")
    p = tuple(_int(c, ctx) for c in value)
    if dim is not None and len(p) != dim:
        raise ParseError(f"{ctx}: point {list(p)} does not have dimension {dim}")
    return p


def _point_list(value, dim: int | None, ctx: str, *, unique: bool = True) -> list[Point]:
    if not isinstance(value, list):
        raise ParseError(f"{ctx}: expected a list of points")
    pts = [_point(v, dim, f"{ctx}[{i}]") for i, v in enumerate(value)]
    if unique and len(set(pts)) != len(pts):
        seen = set()
        dup = next(p for p in pts if p in seen or seen.add(p))
        raise ParseError(f"{ctx}: duplicate point {list(dup)}")
    return pts


def _plist(points) -> list[list[int]]:
    return [list(p) for p in sorted(points)]


# images


def image_to_doc(X: DigitalImage) -> dict:
    return {
        "kind": "image",
        "version": VERSION,
        "dim": X.dimension,
        "adjacency": X.adjacency.u,
        "points": _plist(X.points),
    }


def image_from_doc(doc: Source, ctx: str = "image") -> DigitalImage:
    doc = load_document(doc, "image")
    dim = _int(_field(doc, "dim", ctx), f"{ctx}.dim")
    u = _int(_field(doc, "adjacency", ctx), f"{ctx}.adjacency")
    try:
        spec = AdjacencySpec(dim, u)
    except InvalidInputError as exc:
        raise ParseError(f"{ctx}.adjacency: {exc}") from None
    pts = _point_list(_field(doc, "points", ctx), dim, f"{ctx}.points")
    return DigitalImage(spec, frozenset(pts))


def serialize_image(X: DigitalImage) -> str:
    return dumps(image_to_doc(X))


def parse_image(text: Source) -> DigitalImage:
    return image_from_doc(text)


def subdivided_to_doc(S: SubdividedImage) -> dict:
    doc = image_to_doc(S.image)
    doc["scale"] = S.scale
    doc["base"] = image_to_doc(S.base)
    return doc


def serialize_subdivided(S: SubdividedImage) -> str:
    return dumps(subdivided_to_doc(S))


def parse_subdivided(text: Source) -> SubdividedImage:
    doc = load_document(text, "image")
    numerators = image_from_doc(doc)
    scale = _int(_field(doc, "scale", "image"), "image.scale")
    base = image_from_doc(_field(doc, "base", "image"), "image.base")
    if scale < 1:
        raise ParseError("image.scale: must be positive")
    S = subdivide(base, scale)
    if S.image != numerators:
        raise ParseError("image.points: numerators do not match the subdivision of image.base")
    return S


def parse_point_set(text: Source, dim: int | None = None) -> frozenset[Point]:
    """A point set given as an image document, ``{"points": [...]}``, or a bare list."""
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    else:
        doc = text
    if isinstance(doc, dict):
        doc = _field(doc, "points", "subset")
    return frozenset(_point_list(doc, dim, "subset"))


# multivalued functions


def multifn_to_doc(F: MultiFn) -> dict:
    return {
        "kind": "multifn",
        "version": VERSION,
        "domain": image_to_doc(F.domain),
        "codomain": image_to_doc(F.codomain),
        "map": [{"x": list(x), "fx": _plist(fx)} for x, fx in F.items()],
    }


def multifn_from_doc(doc: Source, ctx: str = "multifn") -> MultiFn:
    doc = load_document(doc, "multifn")
    X = image_from_doc(_field(doc, "domain", ctx), f"{ctx}.domain")
    Y = image_from_doc(_field(doc, "codomain", ctx), f"{ctx}.codomain")
    entries = _field(doc, "map", ctx)
    if not isinstance(entries, list):
        raise ParseError(f"{ctx}.map: expected a list")
    table: dict[Point, list[Point]] = {}
    for i, entry in enumerate(entries):
        ectx = f"{ctx}.map[{i}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{ectx}: expected an object with 'x' and 'fx'")
        x = _point(_field(entry, "x", ectx), X.dimension, f"{ectx}.x")
        if x in table:
            raise ParseError(f"{ectx}.x: point {list(x)} listed twice")
        if x not in X.points:
            raise ParseError(f"{ectx}.x: point {list(x)} is not in the domain")
        fx = _point_list(_field(entry, "fx", ectx), Y.dimension, f"{ectx}.fx")
        if not fx:
            raise ParseError(f"{ectx}.fx: point-image must be nonempty")
        stray = [p for p in fx if p not in Y.points]
        if stray:
            raise ParseError(f"{ectx}.fx: {list(stray[0])} is not in the codomain")
        table[x] = fx
    missing = X.points - table.keys()
    if missing:
        raise ParseError(f"{ctx}.map: no entry for domain point {list(min(missing))}")
    return MultiFn(X, Y, table)


def serialize_multifn(F: MultiFn) -> str:
    return dumps(multifn_to_doc(F))


def parse_multifn(text: Source) -> MultiFn:
    return multifn_from_doc(text)


# witnesses


def witness_to_doc(w: ContinuityWitness, F: MultiFn | None = None) -> dict:
    doc = {
        "kind": "witness",
        "version": VERSION,
        "level": w.level,
        "assignment": [{"z": list(z), "value": list(w.assignment[z])} for z in sorted(w.assignment)],
    }
    if F is not None:
        doc["fn"] = multifn_to_doc(F)
    return doc


def witness_from_doc(doc: Source, ctx: str = "witness") -> ContinuityWitness:
    doc = load_document(doc, "witness")
    level = _int(_field(doc, "level", ctx), f"{ctx}.level")
    if level < 1:
        raise ParseError(f"{ctx}.level: must be positive")
    entries = _field(doc, "assignment", ctx)
    if not isinstance(entries, list):
        raise ParseError(f"{ctx}.assignment: expected a list")
    table = {}
    for i, entry in enumerate(entries):
        ectx = f"{ctx}.assignment[{i}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{ectx}: expected an object with 'z' and 'value'")
        z = _point(_field(entry, "z", ectx), None, f"{ectx}.z")
        if z in table:
            raise ParseError(f"{ectx}.z: numerator {list(z)} listed twice")
        table[z] = _point(_field(entry, "value", ectx), None, f"{ectx}.value")
    return ContinuityWitness(level, table)


def serialize_witness(w: ContinuityWitness, F: MultiFn | None = None) -> str:
    return dumps(witness_to_doc(w, F))


def parse_witness(text: Source) -> ContinuityWitness:
    return witness_from_doc(text)


def parse_witness_with_fn(text: Source) -> tuple[ContinuityWitness, MultiFn | None]:
    doc = load_document(text, "witness")
    fn = doc.get("fn")
    return witness_from_doc(doc), (multifn_from_doc(fn, "witness.fn") if fn is not None else None)


# property reports


def report_to_doc(rep: PropertyReport, F: MultiFn | None = None) -> dict:
    cont = {"status": rep.continuous.status}
    if rep.continuous.level is not None:
        cont["level"] = rep.continuous.level
    return {
        "kind": "report",
        "version": VERSION,
        "weak": rep.weak,
        "strong": rep.strong,
        "connectivity_preserving": rep.connectivity_preserving,
        "continuous": cont,
        "refuted": rep.refuted,
        "witness": witness_to_doc(rep.witness, F) if rep.witness is not None else None,
    }


def report_from_doc(doc: Source, ctx: str = "report") -> PropertyReport:
    doc = load_document(doc, "report")
    cont = _field(doc, "continuous", ctx)
    if not isinstance(cont, dict):
        raise ParseError(f"{ctx}.continuous: expected an object")
    status = _field(cont, "status", f"{ctx}.continuous")
    if status not in ("witness-found", "not-found", "not-applicable"):
        raise ParseError(f"{ctx}.continuous.status: unknown status {status!r}")
    level = cont.get("level")
    if level is not None:
        level = _int(level, f"{ctx}.continuous.level")
    wdoc = doc.get("witness")
    return PropertyReport(
        weak=_bool(_field(doc, "weak", ctx), f"{ctx}.weak"),
        strong=_bool(_field(doc, "strong", ctx), f"{ctx}.strong"),
        connectivity_preserving=_bool(
            _field(doc, "connectivity_preserving", ctx), f"{ctx}.connectivity_preserving"
        ),
        continuous=Continuity(status, level),
        witness=witness_from_doc(wdoc, f"{ctx}.witness") if wdoc is not None else None,
        refuted=_bool(doc.get("refuted", False), f"{ctx}.refuted"),
    )


def serialize_report(rep: PropertyReport, F: MultiFn | None = None) -> str:
    return dumps(report_to_doc(rep, F))


def parse_report(text: Source) -> PropertyReport:
    return report_from_doc(text)


# census records


def census_to_doc(rec: CensusRecord) -> dict:
    combos = []
    for sig in sorted(rec.combos, key=lambda s: tuple(not v for v in s.as_dict().values())):
        combos.append(
            {
                "signature": sig.as_dict(),
                "count": rec.combos[sig],
                "representative": multifn_to_doc(rec.representatives[sig]),
            }
        )
    return {
        "kind": "census",
        "version": VERSION,
        "domain": image_to_doc(rec.domain),
        "codomain": image_to_doc(rec.codomain),
        "r_max": rec.r_max,
        "total": rec.total,
        "counts": {k: rec.counts.get(k, 0) for k in ("weak", "strong", "cp", "continuous")},
        "combos": combos,
        "cp_mismatches": rec.cp_mismatches,
    }


def census_from_doc(doc: Source, ctx: str = "census") -> CensusRecord:
    doc = load_document(doc, "census")
    rec = CensusRecord(
        image_from_doc(_field(doc, "domain", ctx), f"{ctx}.domain"),
        image_from_doc(_field(doc, "codomain", ctx), f"{ctx}.codomain"),
        _int(_field(doc, "r_max", ctx), f"{ctx}.r_max"),
    )
    rec.total = _int(_field(doc, "total", ctx), f"{ctx}.total")
    counts = _field(doc, "counts", ctx)
    if not isinstance(counts, dict):
        raise ParseError(f"{ctx}.counts: expected an object")
    rec.counts = Counter({k: _int(v, f"{ctx}.counts.{k}") for k, v in counts.items() if v})
    rec.cp_mismatches = _int(doc.get("cp_mismatches", 0), f"{ctx}.cp_mismatches")
    combos = _field(doc, "combos", ctx)
    if not isinstance(combos, list):
        raise ParseError(f"{ctx}.combos: expected a list")
    for i, entry in enumerate(combos):
        ectx = f"{ctx}.combos[{i}]"
        sig_doc = _field(entry, "signature", ectx)
        sig = Signature(**{k: _bool(_field(sig_doc, k, ectx), f"{ectx}.{k}") for k in ("weak", "strong", "cp", "continuous")})
        rec.combos[sig] = _int(_field(entry, "count", ectx), f"{ectx}.count")
        rec.representatives[sig] = multifn_from_doc(_field(entry, "representative", ectx), f"{ectx}.representative")
    return rec


def serialize_census(rec: CensusRecord) -> str:
    return dumps(census_to_doc(rec))


def parse_census(text: Source) -> CensusRecord:
    return census_from_doc(text)


def parse_any(text: Source) -> Any:
    """Decode a document of any kind into its value."""
    doc = load_document(text)
    parsers = {
        "image": parse_image,
        "multifn": parse_multifn,
        "witness": parse_witness,
        "report": parse_report,
        "census": parse_census,
    }
    kind = doc.get("kind")
    if kind not in parsers:
        raise ParseError(f"unknown document kind {kind!r}")
    return parsers[kind](doc)
