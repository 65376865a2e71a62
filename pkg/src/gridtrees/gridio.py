"""Text formats for grid graphs and district maps.

Grid file, one record per line::

    # comment
    v x y               vertex
    e x1 y1 x2 y2       edge (optional; without any, the graph is induced)
    explicit            the e records are the full edge set, even if there are none

Partition file: ``x y district_id`` per line, ``#`` comments allowed.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .lattice import GridGraph, GridGraphError, Vertex, induced_grid_graph


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _ints(fields, lineno):
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(fields)!r}", lineno) from None


def parse_grid(text: str) -> GridGraph:
    vertices, edges = [], []
    explicit = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind, *rest = line.split()
        if kind == "v" and len(rest) == 2:
            vertices.append(Vertex(*_ints(rest, lineno)))
        elif kind == "e" and len(rest) == 4:
            x1, y1, x2, y2 = _ints(rest, lineno)
            edges.append((Vertex(x1, y1), Vertex(x2, y2)))
        elif kind == "explicit" and not rest:
            explicit = True
        else:
            raise ParseError(f"malformed record {line!r}", lineno)
    if not vertices:
        raise ParseError("empty graph")
    try:
        if not edges and not explicit:
            return induced_grid_graph(vertices)
        return GridGraph(frozenset(vertices), frozenset(edges))
    except GridGraphError as exc:
        raise ParseError(str(exc)) from None


def format_grid(g: GridGraph, explicit_edges: bool = True) -> str:
    lines = [f"v {v.x} {v.y}" for v in g.order]
    if explicit_edges:
        lines += [f"e {u.x} {u.y} {w.x} {w.y}" for u, w in sorted(g.edges)]
        if not g.edges and induced_grid_graph(g.vertices).edges:
            # an edgeless file would otherwise be read back as induced
            lines.append("explicit")
    return "\n".join(lines) + "\n"


def read_grid(path) -> GridGraph:
    return parse_grid(Path(path).read_text())


def parse_partition(text: str) -> dict[Vertex, int]:
    assignment = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(f"malformed record {line!r}", lineno)
        x, y, d = _ints(fields, lineno)
        v = Vertex(x, y)
        if v in assignment:
            raise ParseError(f"vertex {x} {y} assigned twice", lineno)
        assignment[v] = d
    if not assignment:
        raise ParseError("empty partition")
    return assignment


def format_partition(assignment) -> str:
    return "".join(f"{v.x} {v.y} {d}\n" for v, d in sorted(assignment.items()))


def read_partition(path) -> dict[Vertex, int]:
    return parse_partition(Path(path).read_text())


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
