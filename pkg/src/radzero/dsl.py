"""The ``.quiver`` text format and DOT export.

Example::

    # Kronecker quiver, written as two parallel arrows
    vertices 2
    name 1 a
    1 -> 2
    1 -> 2

Grammar, one statement per line (``#`` starts a comment, blank lines ignored):

* ``vertices <n>`` -- required, first statement, ``n >= 1``;
* ``name <v> <label>`` -- optional cosmetic label for vertex ``v``;
* ``<j> -> <i>`` -- one arrow; ``k`` bare lines for the same pair collapse to
  a single arrow valued ``(k,k)``, as for a path algebra;
* ``<j> -> <i> (<head_mult>,<tail_mult>)`` -- one arrow with an explicit
  valuation; it must be the only line for its pair.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .quiver import Arrow, ValuedQuiver, Valuation


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class QuiverDocument:
    quiver: ValuedQuiver
    vertex_names: Optional[dict[int, str]] = None
    # pair -> line where its first arrow statement appeared
    arrow_lines: Optional[dict[tuple[int, int], int]] = None

    def label(self, v: int) -> str:
        if self.vertex_names and v in self.vertex_names:
            return self.vertex_names[v]
        return str(v)


_VERTICES = re.compile(r"vertices\s+(-?\d+)", re.ASCII)
_NAME = re.compile(r"name\s+(\d+)\s+(\S+)", re.ASCII)
_ARROW = re.compile(r"(\d+)\s*->\s*(\d+)(?:\s*\(\s*(\d+)\s*,\s*(\d+)\s*\))?", re.ASCII)


def parse(text: str) -> QuiverDocument:
    vertex_count = None
    names: dict[int, str] = {}
    bare: dict[tuple[int, int], int] = {}
    explicit: dict[tuple[int, int], Valuation] = {}
    first_line: dict[tuple[int, int], int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if vertex_count is None:
            m = _VERTICES.fullmatch(line)
            if not m:
                raise ParseError("expected 'vertices <n>' as the first statement", lineno)
            vertex_count = int(m.group(1))
            if vertex_count <= 0:
                raise ParseError(f"vertex count must be positive, got {vertex_count}", lineno)
            continue

        if _VERTICES.fullmatch(line):
            raise ParseError("repeated 'vertices' statement", lineno)

        m = _NAME.fullmatch(line)
        if m:
            v, label = int(m.group(1)), m.group(2)
            _check_range(v, vertex_count, lineno)
            if v in names:
                raise ParseError(f"vertex {v} named twice", lineno)
            if label in names.values():
                raise ParseError(f"name {label!r} used twice", lineno)
            names[v] = label
            continue

        m = _ARROW.fullmatch(line)
        if not m:
            raise ParseError(f"cannot parse {line!r}", lineno)
        tail, head = int(m.group(1)), int(m.group(2))
        _check_range(tail, vertex_count, lineno)
        _check_range(head, vertex_count, lineno)
        pair = (tail, head)
        first_line.setdefault(pair, lineno)
        if m.group(3) is None:
            if pair in explicit:
                raise ParseError(f"mixed declarations for pair ({tail},{head})", lineno)
            bare[pair] = bare.get(pair, 0) + 1
        else:
            if pair in bare:
                raise ParseError(f"mixed declarations for pair ({tail},{head})", lineno)
            if pair in explicit:
                raise ParseError(f"duplicate valuation for pair ({tail},{head})", lineno)
            explicit[pair] = Valuation(int(m.group(3)), int(m.group(4)))

    if vertex_count is None:
        raise ParseError("missing 'vertices <n>' statement")

    arrows = [Arrow(t, h, Valuation(k, k)) for (t, h), k in bare.items()]
    arrows += [Arrow(t, h, val) for (t, h), val in explicit.items()]
    return QuiverDocument(
        ValuedQuiver(vertex_count, tuple(arrows)),
        names or None,
        first_line,
    )


def _check_range(v: int, vertex_count: int, lineno: int) -> None:
    if not 1 <= v <= vertex_count:
        raise ParseError(f"vertex {v} out of range 1..{vertex_count}", lineno)


def serialize(doc: QuiverDocument | ValuedQuiver) -> str:
    """Canonical text: arrows sorted by (tail, head), valuations explicit."""
    if isinstance(doc, ValuedQuiver):
        doc = QuiverDocument(doc)
    q = doc.quiver
    lines = [f"vertices {q.vertex_count}"]
    for v, label in sorted((doc.vertex_names or {}).items()):
        lines.append(f"name {v} {label}")
    for a in q.arrows:
        lines.append(f"{a.tail} -> {a.head} ({a.val.head_mult},{a.val.tail_mult})")
    return "\n".join(lines) + "\n"


def export_dot(doc: QuiverDocument | ValuedQuiver) -> str:
    """Graphviz digraph; sources are boxes, sinks double circles, a vertex
    that is both gets a double octagon."""
    if isinstance(doc, ValuedQuiver):
        doc = QuiverDocument(doc)
    q = doc.quiver
    out = ["digraph quiver {"]
    for v in q.vertices:
        source, sink = v in q.sources, v in q.sinks
        if source and sink:
            shape = "doubleoctagon"
        elif source:
            shape = "box"
        elif sink:
            shape = "doublecircle"
        else:
            shape = "circle"
        label = doc.label(v).replace("\\", "\\\\").replace('"', '\\"')
        out.append(f'  {v} [label="{label}", shape={shape}];')
    for a in q.arrows:
        out.append(f'  {a.tail} -> {a.head} [label="({a.val.head_mult},{a.val.tail_mult})"];')
    out.append("}")
    return "\n".join(out) + "\n"
