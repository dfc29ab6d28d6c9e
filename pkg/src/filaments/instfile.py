"""Line-delimited instance files.

The format is deliberately diff-friendly: one record per line, whitespace
separated, ``#`` comments, and an explicit version header::

    filament-instance 1
    filament <id> <weight> semicircle <l> <r>
    filament <id> <weight> polyline <x,y> <x,y> ...
    filament <id> <weight> abstract <l> <r>
    adjacency <0/1 ... n entries>          # n rows, in filament order
    edge <id> <id> <weight>

Coordinates are exact rationals written as plain integers or ``num/den``
pairs; weights are integers (exact mode) or decimal floats. An adjacency
block is required exactly when any filament is abstract and, when present,
overrides geometry as the intersection source. ``edge`` lines carry optional
explicit edge weights for the matching problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import Point, PolylineFilament, Rational, SemicircleFilament
from .instance import AbstractFilament, Instance, InstanceError, Weight

FORMAT_VERSION = 1

Edge = tuple[int, int]


class InstanceFormatError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)


def _parse_rational(tok: str, lineno: int) -> Rational:
    try:
        if "/" in tok:
            num, den = tok.split("/", 1)
            return Fraction(int(num), int(den))
        return int(tok)
    except (ValueError, ZeroDivisionError):
        raise InstanceFormatError(f"bad rational {tok!r}", lineno) from None


def _parse_weight(tok: str, lineno: int) -> Weight:
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        return float(tok)
    except ValueError:
        raise InstanceFormatError(f"bad weight {tok!r}", lineno) from None


def _format_rational(v: Rational) -> str:
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    return str(v)


@dataclass(frozen=True, eq=False)
class InstanceDocument:
    """Instance plus the file-level identity: ids and explicit edge weights."""

    instance: Instance
    ids: tuple[str, ...]
    edge_weights: dict[Edge, Weight] | None = None

    def position(self, fid: str) -> int:
        return self.ids.index(fid)


def make_document(instance: Instance, ids: tuple[str, ...] | None = None,
                  edge_weights: dict[Edge, Weight] | None = None
                  ) -> InstanceDocument:
    """Wrap an instance for serialization, inventing ids f0..fN-1 if needed."""
    if instance.pair_test is not None:
        raise InstanceError("derived instances are not serializable")
    if ids is None:
        ids = tuple(f"f{i}" for i in range(instance.size))
    if len(ids) != instance.size or len(set(ids)) != len(ids):
        raise InstanceError("ids must be unique, one per filament")
    return InstanceDocument(instance, ids, edge_weights)


def parse_document(text: str) -> InstanceDocument:
    """Parse file text; raises InstanceFormatError on any schema problem."""
    filaments: list = []
    weights: list[Weight] = []
    ids: list[str] = []
    adjacency_rows: list[tuple[bool, ...]] = []
    edge_lines: list[tuple[str, str, Weight, int]] = []
    saw_header = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if not saw_header:
            if toks[0] != "filament-instance" or len(toks) != 2:
                raise InstanceFormatError(
                    "expected 'filament-instance <version>' header", lineno)
            if toks[1] != str(FORMAT_VERSION):
                raise InstanceFormatError(
                    f"unsupported format version {toks[1]!r}", lineno)
            saw_header = True
            continue

        kind = toks[0]
        if kind == "filament":
            if len(toks) < 4:
                raise InstanceFormatError("truncated filament record", lineno)
            fid, wtok, shape = toks[1], toks[2], toks[3]
            if fid in ids:
                raise InstanceFormatError(f"duplicate id {fid!r}", lineno)
            w = _parse_weight(wtok, lineno)
            rest = toks[4:]
            if shape in ("semicircle", "abstract"):
                if len(rest) != 2:
                    raise InstanceFormatError(
                        f"{shape} needs exactly l and r", lineno)
                lo = _parse_rational(rest[0], lineno)
                hi = _parse_rational(rest[1], lineno)
                cls = SemicircleFilament if shape == "semicircle" else AbstractFilament
                filaments.append(cls(lo, hi))
            elif shape == "polyline":
                if len(rest) < 2:
                    raise InstanceFormatError(
                        "polyline needs at least 2 vertices", lineno)
                pts = []
                for tok in rest:
                    parts = tok.split(",")
                    if len(parts) != 2:
                        raise InstanceFormatError(f"bad vertex {tok!r}", lineno)
                    pts.append(Point(_parse_rational(parts[0], lineno),
                                     _parse_rational(parts[1], lineno)))
                filaments.append(PolylineFilament(tuple(pts)))
            else:
                raise InstanceFormatError(f"unknown kind {shape!r}", lineno)
            ids.append(fid)
            weights.append(w)
        elif kind == "adjacency":
            row = []
            for tok in toks[1:]:
                if tok not in ("0", "1"):
                    raise InstanceFormatError(
                        f"adjacency entries must be 0 or 1, got {tok!r}", lineno)
                row.append(tok == "1")
            adjacency_rows.append(tuple(row))
        elif kind == "edge":
            if len(toks) != 4:
                raise InstanceFormatError("edge needs two ids and a weight", lineno)
            edge_lines.append((toks[1], toks[2],
                               _parse_weight(toks[3], lineno), lineno))
        else:
            raise InstanceFormatError(f"unknown record {kind!r}", lineno)

    if not saw_header:
        raise InstanceFormatError("empty file: missing header")

    n = len(filaments)
    adjacency = None
    if adjacency_rows:
        if len(adjacency_rows) != n:
            raise InstanceFormatError(
                f"{len(adjacency_rows)} adjacency rows for {n} filaments")
        adjacency = tuple(adjacency_rows)
    elif any(isinstance(f, AbstractFilament) for f in filaments):
        raise InstanceFormatError(
            "abstract filaments require an adjacency block")

    try:
        instance = Instance(tuple(filaments), tuple(weights), adjacency)
    except InstanceError as exc:
        raise InstanceFormatError(str(exc)) from exc

    edge_weights: dict[Edge, Weight] | None = None
    if edge_lines:
        edge_weights = {}
        pos = {fid: i for i, fid in enumerate(ids)}
        for a, b, w, lineno in edge_lines:
            if a not in pos or b not in pos:
                raise InstanceFormatError(
                    f"edge references unknown id {a!r} or {b!r}", lineno)
            if a == b:
                raise InstanceFormatError("edge endpoints must differ", lineno)
            key = (min(pos[a], pos[b]), max(pos[a], pos[b]))
            if key in edge_weights:
                raise InstanceFormatError(
                    f"duplicate edge {a!r} {b!r}", lineno)
            edge_weights[key] = w

    return InstanceDocument(instance, tuple(ids), edge_weights)


def serialize_document(doc: InstanceDocument) -> str:
    """Deterministic text for a document; parse(serialize(d)) round-trips."""
    inst = doc.instance
    out = [f"filament-instance {FORMAT_VERSION}"]
    for i, f in enumerate(inst.filaments):
        head = f"filament {doc.ids[i]} {inst.weights[i]}"
        if isinstance(f, SemicircleFilament):
            out.append(f"{head} semicircle {_format_rational(f.left)}"
                       f" {_format_rational(f.right)}")
        elif isinstance(f, AbstractFilament):
            out.append(f"{head} abstract {_format_rational(f.left)}"
                       f" {_format_rational(f.right)}")
        elif isinstance(f, PolylineFilament):
            pts = " ".join(f"{_format_rational(p.x)},{_format_rational(p.y)}"
                           for p in f.vertices)
            out.append(f"{head} polyline {pts}")
        else:
            raise InstanceError(f"cannot serialize filament kind {type(f).__name__}")
    if inst.adjacency is not None:
        for row in inst.adjacency:
            out.append("adjacency " + " ".join("1" if v else "0" for v in row))
    if doc.edge_weights:
        for (a, b), w in sorted(doc.edge_weights.items()):
            out.append(f"edge {doc.ids[a]} {doc.ids[b]} {w}")
    return "\n".join(out) + "\n"


def load(path) -> InstanceDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read())


def dump(doc: InstanceDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_document(doc))
