"""Graph and decomposition serialization.

Two graph formats are supported: the binary planar_code stream used by plane
graph generators (header ">>planar_code<<", then per graph a vertex count
byte followed by zero-terminated rotation lists), and a line-oriented text
format ("i: j k l" rotation lines plus an "outer: u v" line).  Decompositions
travel as strict JSON documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .decomposition import (ArcInOrientation, ConstraintSpec, Decomposition,
                            EdgeInMatching, MatchedPartnerOnBoundary,
                            SideCondition)
from .oracle import canonical_form
from .plane_graph import PlaneGraph

PLANAR_CODE_HEADER = b">>planar_code<<"


class FormatError(ValueError):
    pass


# ---------------------------------------------------------------------------
# planar_code
# ---------------------------------------------------------------------------

def parse_planar_code(data: bytes, outer: tuple[int, int] | None = None
                      ) -> Iterator[PlaneGraph]:
    """Decode a planar_code byte stream (single-byte vertex form, n <= 255).

    The outer face defaults to the face traced from (1, first neighbour of 1)
    unless an explicit directed edge is given.
    """
    if not data.startswith(PLANAR_CODE_HEADER):
        raise FormatError("missing >>planar_code<< header")
    pos = len(PLANAR_CODE_HEADER)
    while pos < len(data):
        n = data[pos]
        pos += 1
        if n == 0:
            raise FormatError("graph with zero vertices")
        rotation: list[tuple[int, ...]] = []
        for v in range(1, n + 1):
            row = []
            while True:
                if pos >= len(data):
                    raise FormatError(f"truncated record at vertex {v}")
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise FormatError(f"neighbour index {b} out of range 1..{n}")
                row.append(b)
            rotation.append(tuple(row))
        if outer is None:
            oe = (1, rotation[0][0]) if rotation[0] else (1, 1)
        else:
            oe = outer
        yield PlaneGraph(rotation, oe)


def emit_planar_code(graphs: Sequence[PlaneGraph]) -> bytes:
    out = bytearray(PLANAR_CODE_HEADER)
    for g in graphs:
        if g.n > 255:
            raise FormatError("planar_code single-byte form caps n at 255")
        out.append(g.n)
        for v in g.vertices():
            out.extend(g.neighbors(v))
            out.append(0)
    return bytes(out)


# ---------------------------------------------------------------------------
# rotation text
# ---------------------------------------------------------------------------

def parse_rotation_text(text: str) -> PlaneGraph:
    """Parse "i: j k l" rotation lines plus one "outer: u v" line."""
    rows: dict[int, tuple[int, ...]] = {}
    outer: tuple[int, int] | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        head = head.strip()
        parts = rest.split()
        if head == "outer":
            if len(parts) != 2:
                raise FormatError(f"bad outer line: {raw!r}")
            outer = (int(parts[0]), int(parts[1]))
            continue
        v = int(head)
        if v in rows:
            raise FormatError(f"duplicate vertex line for {v}")
        rows[v] = tuple(int(p) for p in parts)
    if outer is None:
        raise FormatError("missing outer: line")
    if not rows or set(rows) != set(range(1, len(rows) + 1)):
        raise FormatError("vertex lines must cover 1..n")
    g = PlaneGraph([rows[v] for v in range(1, len(rows) + 1)], outer)
    for v in g.vertices():
        for u in g.neighbors(v):
            if v not in g.neighbors(u):
                raise FormatError(f"asymmetric adjacency {v}-{u}")
    return g


def emit_rotation_text(g: PlaneGraph) -> str:
    lines = [f"{v}: " + " ".join(map(str, g.neighbors(v))) for v in g.vertices()]
    lines.append(f"outer: {g.outer[0]} {g.outer[1]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# decomposition documents
# ---------------------------------------------------------------------------

_DOC_FIELDS = {"graph", "path", "spec", "arcs", "matching", "trace"}
_SPEC_FIELDS = {"a", "b", "relaxed", "side_conditions"}


@dataclass
class DecompositionDocument:
    graph_hash: str
    arcs: list[tuple[int, int]]
    matching: list[tuple[int, int]]
    path: tuple[int, int, int, int] | None = None
    spec: ConstraintSpec | None = None
    trace: list[str] = field(default_factory=list)

    @staticmethod
    def for_graph(g: PlaneGraph, dec: Decomposition,
                  path: Sequence[int] | None = None,
                  spec: ConstraintSpec | None = None,
                  trace: Sequence[str] = ()) -> "DecompositionDocument":
        return DecompositionDocument(
            graph_hash=canonical_form(g).hex(),
            arcs=sorted(dec.arcs),
            matching=sorted(dec.matching),
            path=tuple(path) if path is not None else None,
            spec=spec,
            trace=list(trace))

    def decomposition(self) -> Decomposition:
        return Decomposition.of(self.arcs, self.matching)

    def to_json(self) -> str:
        doc: dict = {
            "graph": self.graph_hash,
            "arcs": [list(a) for a in self.arcs],
            "matching": [list(m) for m in self.matching],
        }
        if self.path is not None:
            doc["path"] = list(self.path)
        if self.spec is not None:
            doc["spec"] = _spec_to_json(self.spec)
        if self.trace:
            doc["trace"] = self.trace
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @staticmethod
    def from_json(text: str) -> "DecompositionDocument":
        doc = json.loads(text)
        unknown = set(doc) - _DOC_FIELDS
        if unknown:
            raise FormatError(f"unknown document fields: {sorted(unknown)}")
        for req in ("graph", "arcs", "matching"):
            if req not in doc:
                raise FormatError(f"missing document field {req!r}")
        spec = _spec_from_json(doc["spec"]) if "spec" in doc else None
        return DecompositionDocument(
            graph_hash=doc["graph"],
            arcs=[tuple(a) for a in doc["arcs"]],
            matching=[tuple(m) for m in doc["matching"]],
            path=tuple(doc["path"]) if "path" in doc else None,
            spec=spec,
            trace=list(doc.get("trace", [])))


def _spec_to_json(spec: ConstraintSpec) -> dict:
    conds = []
    for c in spec.side_conditions:
        if isinstance(c, EdgeInMatching):
            conds.append({"kind": "edge_in_matching", "u": c.u, "v": c.v})
        elif isinstance(c, ArcInOrientation):
            conds.append({"kind": "arc_in_orientation", "u": c.u, "v": c.v})
        else:
            conds.append({"kind": "matched_partner_on_boundary", "v": c.v})
    return {"a": "".join(map(str, spec.a)), "b": "".join(map(str, spec.b)),
            "relaxed": spec.relaxed, "side_conditions": conds}


def _spec_from_json(doc: dict) -> ConstraintSpec:
    unknown = set(doc) - _SPEC_FIELDS
    if unknown:
        raise FormatError(f"unknown spec fields: {sorted(unknown)}")
    conds: list[SideCondition] = []
    for c in doc.get("side_conditions", []):
        kind = c.get("kind")
        if kind == "edge_in_matching":
            conds.append(EdgeInMatching(c["u"], c["v"]))
        elif kind == "arc_in_orientation":
            conds.append(ArcInOrientation(c["u"], c["v"]))
        elif kind == "matched_partner_on_boundary":
            conds.append(MatchedPartnerOnBoundary(c["v"]))
        else:
            raise FormatError(f"unknown side condition kind {kind!r}")
    return ConstraintSpec.parse(doc["a"] + "," + doc["b"],
                                relaxed=bool(doc.get("relaxed", False)),
                                side_conditions=conds)
