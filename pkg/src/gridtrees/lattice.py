"""Grid graphs: finite subgraphs of the square lattice.

Vertices are integer points, edges join rook-adjacent points.  Edge sets are
explicit, so a grid graph need not be the induced subgraph on its vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple


class Vertex(NamedTuple):
    x: int
    y: int

    def translate(self, dx: int, dy: int) -> "Vertex":
        return Vertex(self.x + dx, self.y + dy)


Edge = tuple  # (Vertex, Vertex), endpoints in page order


def page_key(v: Vertex) -> tuple[int, int]:
    """Sort key for words-on-a-page order: top row first, left to right."""
    return (-v.y, v.x)


def make_edge(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if page_key(u) < page_key(v) else (v, u)


def lattice_neighbors(v: Vertex) -> tuple[Vertex, ...]:
    x, y = v
    return (Vertex(x, y + 1), Vertex(x - 1, y), Vertex(x + 1, y), Vertex(x, y - 1))


class GridGraphError(ValueError):
    pass


@dataclass(frozen=True)
class GridGraph:
    """A finite subgraph of the square lattice.

    Connectivity is not required; operations that need it say so.
    """

    vertices: frozenset
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        verts = frozenset(Vertex(int(x), int(y)) for x, y in self.vertices)
        if not verts:
            raise GridGraphError("empty graph")
        edges = set()
        for u, v in self.edges:
            u, v = Vertex(*u), Vertex(*v)
            if abs(u.x - v.x) + abs(u.y - v.y) != 1:
                raise GridGraphError(f"{u}-{v} is not a lattice edge")
            if u not in verts or v not in verts:
                raise GridGraphError(f"edge {u}-{v} has an endpoint outside the vertex set")
            edges.add(make_edge(u, v))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edges))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertices

    @cached_property
    def order(self) -> tuple[Vertex, ...]:
        return tuple(sorted(self.vertices, key=page_key))

    @cached_property
    def adjacency(self) -> dict[Vertex, tuple[Vertex, ...]]:
        adj: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(nbrs, key=page_key)) for v, nbrs in adj.items()}

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return make_edge(u, v) in self.edges

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency[v])

    def subgraph(self, vertices: Iterable[Vertex]) -> "GridGraph":
        """Subgraph induced within this graph's own edge set."""
        keep = frozenset(vertices)
        return GridGraph(keep, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def translate(self, dx: int, dy: int) -> "GridGraph":
        return GridGraph(
            frozenset(v.translate(dx, dy) for v in self.vertices),
            frozenset((u.translate(dx, dy), v.translate(dx, dy)) for u, v in self.edges),
        )

    def reflect_antidiagonal(self) -> "GridGraph":
        """Image under (x, y) -> (-y, -x)."""

        def f(v):
            return Vertex(-v.y, -v.x)

        return GridGraph(
            frozenset(f(v) for v in self.vertices),
            frozenset((f(u), f(v)) for u, v in self.edges),
        )

    def components(self) -> list[frozenset]:
        seen: set[Vertex] = set()
        comps = []
        for start in self.order:
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1


def induced_grid_graph(vertices: Iterable) -> GridGraph:
    verts = frozenset(Vertex(int(x), int(y)) for x, y in vertices)
    if not verts:
        raise GridGraphError("empty graph")
    edges = set()
    for v in verts:
        for w in (Vertex(v.x + 1, v.y), Vertex(v.x, v.y + 1)):
            if w in verts:
                edges.add(make_edge(v, w))
    return GridGraph(verts, frozenset(edges))


def rectangle(width: int, height: int, x0: int = 0, y0: int = 0) -> GridGraph:
    """Induced graph on a ``width`` by ``height`` block of lattice points."""
    return induced_grid_graph(
        (x, y) for x in range(x0, x0 + width) for y in range(y0, y0 + height)
    )


def diamond(radius: int) -> GridGraph:
    return induced_grid_graph(
        (x, y)
        for x in range(-radius, radius + 1)
        for y in range(-radius, radius + 1)
        if abs(x) + abs(y) <= radius
    )


# --- cells and faces -------------------------------------------------------


class Cell(NamedTuple):
    """Unit square of the lattice, named by its bottom-right corner."""

    bottom_right: Vertex

    @property
    def corners(self) -> tuple[Vertex, Vertex, Vertex, Vertex]:
        x, y = self.bottom_right
        return (Vertex(x - 1, y + 1), Vertex(x, y + 1), Vertex(x - 1, y), Vertex(x, y))

    @property
    def sides(self) -> tuple[Edge, Edge, Edge, Edge]:
        tl, tr, bl, br = self.corners
        return (make_edge(tl, tr), make_edge(bl, br), make_edge(tl, bl), make_edge(tr, br))

    def neighbors(self) -> tuple["Cell", ...]:
        return tuple(Cell(v) for v in lattice_neighbors(self.bottom_right))


def cell_at(v: Vertex) -> Cell:
    return Cell(Vertex(*v))


def incident_cells(v: Vertex) -> tuple[Cell, Cell, Cell, Cell]:
    """The four cells touching ``v``: up-left, up-right, down-left, down-right."""
    x, y = v
    return (
        Cell(Vertex(x, y)),
        Cell(Vertex(x + 1, y)),
        Cell(Vertex(x, y - 1)),
        Cell(Vertex(x + 1, y - 1)),
    )


def is_face(g: GridGraph, cell: Cell) -> bool:
    return all(c in g.vertices for c in cell.corners) and all(s in g.edges for s in cell.sides)


def faces(g: GridGraph) -> frozenset:
    # every face has its bottom-right corner in g
    return frozenset(Cell(v) for v in g.vertices if is_face(g, Cell(v)))


def area(g: GridGraph) -> int:
    return len(faces(g))


def top_left_boundary(g: GridGraph) -> frozenset:
    """Vertices whose up-left unit square is not a subgraph of ``g``."""
    return frozenset(v for v in g.vertices if not is_face(g, Cell(v)))


def graph_from_cells(cells: Iterable) -> GridGraph:
    """Grid graph made of the corners and sides of the given cells."""
    cells = [c if isinstance(c, Cell) else Cell(Vertex(*c)) for c in cells]
    if not cells:
        raise GridGraphError("empty graph")
    verts = {v for c in cells for v in c.corners}
    edges = {e for c in cells for e in c.sides}
    return GridGraph(frozenset(verts), frozenset(edges))


# --- simplicity ------------------------------------------------------------


@dataclass(frozen=True)
class SimplicityReport:
    is_simple: bool
    boundary_loop: tuple = ()
    boundary_size: int = 0
    area: int = 0
    reason: str = ""

    @property
    def boundary(self) -> frozenset:
        return frozenset(self.boundary_loop)


def _has_hole(cells: frozenset) -> bool:
    xs = [c.bottom_right.x for c in cells]
    ys = [c.bottom_right.y for c in cells]
    lo_x, hi_x, lo_y, hi_y = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    start = Cell(Vertex(lo_x, lo_y))
    outside = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for n in c.neighbors():
            x, y = n.bottom_right
            if lo_x <= x <= hi_x and lo_y <= y <= hi_y and n not in cells and n not in outside:
                outside.add(n)
                queue.append(n)
    box = (hi_x - lo_x + 1) * (hi_y - lo_y + 1)
    return len(outside) + len(cells) != box


def _cells_connected(cells: frozenset) -> bool:
    start = next(iter(cells))
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for n in c.neighbors():
            if n in cells and n not in seen:
                seen.add(n)
                queue.append(n)
    return len(seen) == len(cells)


def _pinch_vertices(g: GridGraph, cells: frozenset) -> list[Vertex]:
    pinched = []
    for v in g.vertices:
        ul, ur, dl, dr = (c in cells for c in incident_cells(v))
        if (ul and dr and not ur and not dl) or (ur and dl and not ul and not dr):
            pinched.append(v)
    return pinched


def _trace_loop(cells: frozenset, boundary_edges: list[Edge]) -> list[Vertex] | None:
    adj: dict[Vertex, list[Vertex]] = {}
    for u, v in boundary_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if any(len(n) != 2 for n in adj.values()):
        return None
    start = min(adj, key=page_key)
    loop = [start]
    prev, cur = start, adj[start][0]
    while cur != start:
        loop.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(loop) != len(adj):
        return None
    return loop


def check_simple(g: GridGraph) -> SimplicityReport:
    """Decide whether ``g`` is everything on and inside one simple closed loop."""
    cells = faces(g)
    if not cells:
        return SimplicityReport(False, reason="no faces")
    rebuilt = graph_from_cells(cells)
    if rebuilt.vertices != g.vertices or rebuilt.edges != g.edges:
        return SimplicityReport(False, area=len(cells), reason="not the closure of its faces")
    if not _cells_connected(cells):
        return SimplicityReport(False, area=len(cells), reason="faces not connected")
    if _has_hole(cells):
        return SimplicityReport(False, area=len(cells), reason="faces enclose a hole")
    if _pinch_vertices(g, cells):
        return SimplicityReport(False, area=len(cells), reason="boundary touches itself")

    side_count: dict[Edge, int] = {}
    for c in cells:
        for s in c.sides:
            side_count[s] = side_count.get(s, 0) + 1
    loop = _trace_loop(cells, [e for e, n in side_count.items() if n == 1])
    if loop is None:
        return SimplicityReport(False, area=len(cells), reason="boundary is not a single loop")
    return SimplicityReport(True, tuple(loop), len(loop), len(cells))


def boundary_vertices(g: GridGraph) -> frozenset:
    """Vertices incident to fewer than four faces."""
    cells = faces(g)
    return frozenset(v for v in g.vertices if sum(c in cells for c in incident_cells(v)) < 4)


@dataclass(frozen=True)
class BoundaryIdentity:
    holds: bool
    top_left_size: int
    boundary_size: int
    top_left_in_boundary: bool


def boundary_identity_check(g: GridGraph) -> BoundaryIdentity:
    """Check that the top-left boundary is one more than half the boundary."""
    report = check_simple(g)
    if not report.is_simple:
        raise GridGraphError("requires simple grid graph")
    tl = top_left_boundary(g)
    inside = tl <= report.boundary
    holds = inside and report.boundary_size % 2 == 0 and 2 * len(tl) == report.boundary_size + 2
    return BoundaryIdentity(holds, len(tl), report.boundary_size, inside)
