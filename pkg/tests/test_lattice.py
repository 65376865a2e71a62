import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ring
from oracles import trace_perimeter
from gridtrees.lattice import (
    Cell,
    GridGraph,
    GridGraphError,
    Vertex,
    area,
    boundary_identity_check,
    boundary_vertices,
    check_simple,
    faces,
    graph_from_cells,
    induced_grid_graph,
    page_key,
    rectangle,
    top_left_boundary,
)


def test_page_order():
    vs = [Vertex(1, 0), Vertex(0, 0), Vertex(5, 1), Vertex(-3, 1)]
    assert sorted(vs, key=page_key) == [Vertex(-3, 1), Vertex(5, 1), Vertex(0, 0), Vertex(1, 0)]


@pytest.mark.parametrize(
    "pts, n_vertices, n_edges",
    [
        ([(0, 0), (1, 0), (0, 1), (1, 1)], 4, 4),
        ([(0, 0), (2, 0)], 2, 0),
        ([(x, y) for x in range(12) for y in range(12)], 144, 264),
    ],
)
def test_induced_grid_graph(pts, n_vertices, n_edges):
    g = induced_grid_graph(pts)
    assert (len(g.vertices), len(g.edges)) == (n_vertices, n_edges)


def test_empty_graph_rejected():
    with pytest.raises(GridGraphError, match="empty graph"):
        induced_grid_graph([])


def test_non_lattice_edge_rejected():
    with pytest.raises(GridGraphError):
        GridGraph(frozenset([(0, 0), (1, 1)]), frozenset([((0, 0), (1, 1))]))
    with pytest.raises(GridGraphError):
        GridGraph(frozenset([(0, 0)]), frozenset([((0, 0), (1, 0))]))


def test_faces(square12, c8):
    assert len(faces(rectangle(2, 2))) == 1
    assert len(faces(square12)) == 121
    assert faces(c8) == frozenset()


def test_face_needs_edges():
    # all four corners present but one side missing
    g = rectangle(2, 2)
    g = GridGraph(g.vertices, g.edges - {(Vertex(0, 1), Vertex(1, 1))})
    assert area(g) == 0


def test_area(square12, diamond8):
    assert area(rectangle(2, 2)) == 1
    assert area(square12) == 121 == 144 - 44 // 2 - 1
    assert area(diamond8) == 112 == 145 - 33


def test_top_left_boundary(square12, diamond8):
    tl = top_left_boundary(square12)
    assert len(tl) == 23
    assert tl == {v for v in square12.vertices if v.y == 11 or v.x == 0}
    assert len(top_left_boundary(diamond8)) == 33
    single = induced_grid_graph([(4, -2)])
    assert top_left_boundary(single) == {Vertex(4, -2)}


def test_check_simple_square(square12):
    report = check_simple(square12)
    assert report.is_simple
    assert report.boundary_size == 44 == trace_perimeter(square12)
    assert report.area == 121


def test_check_simple_loop_is_closed(square12):
    loop = check_simple(square12).boundary_loop
    assert len(set(loop)) == len(loop) > 2
    for u, w in zip(loop, loop[1:] + loop[:1]):
        assert square12.has_edge(u, w)


def test_diamond_simple_after_trimming(diamond8, trimmed_diamond):
    assert not check_simple(diamond8).is_simple
    report = check_simple(trimmed_diamond)
    assert report.is_simple
    assert report.boundary_size == 56


def test_pinch_not_simple():
    g = graph_from_cells([Cell(Vertex(1, 0)), Cell(Vertex(2, 1))])
    assert len(g.vertices) == 7
    assert not check_simple(g).is_simple


def test_hole_not_simple():
    # a single missing cell closes back into a face, so the hole is 2x2
    cells = [Cell(Vertex(x, y)) for x in range(4) for y in range(4) if not (x in (1, 2) and y in (1, 2))]
    report = check_simple(graph_from_cells(cells))
    assert not report.is_simple


@pytest.mark.parametrize("g", [induced_grid_graph([(0, 0)]), rectangle(3, 1), ring(3, 3)])
def test_degenerate_not_simple(g):
    assert not check_simple(g).is_simple


def test_non_induced_simple_graph():
    # U shape: the two arm tops are lattice-adjacent but not joined
    cells = [Cell(Vertex(x, 0)) for x in (1, 2, 3)] + [Cell(Vertex(1, 1)), Cell(Vertex(3, 1))]
    g = graph_from_cells(cells)
    assert Vertex(1, 2) in g and Vertex(2, 2) in g and not g.has_edge(Vertex(1, 2), Vertex(2, 2))
    assert check_simple(g).is_simple
    # inducing adds the missing side and the notch becomes a face
    closed = check_simple(induced_grid_graph(g.vertices))
    assert closed.is_simple and closed.area == 6 and check_simple(g).area == 5


def test_boundary_identity(square12, trimmed_diamond):
    r = boundary_identity_check(square12)
    assert r.holds and (r.top_left_size, r.boundary_size) == (23, 44)
    r = boundary_identity_check(rectangle(2, 2))
    assert r.holds and (r.top_left_size, r.boundary_size) == (3, 4)
    r = boundary_identity_check(trimmed_diamond)
    assert r.holds and (r.top_left_size, r.boundary_size) == (29, 56)
    with pytest.raises(GridGraphError, match="requires simple"):
        boundary_identity_check(rectangle(3, 1))


def test_three_area_expressions_exhaustive(simple_upto8):
    assert len(simple_upto8) > 3000
    for g in simple_upto8:
        report = check_simple(g)
        tl = top_left_boundary(g)
        assert report.boundary_size % 2 == 0
        assert report.area == len(g) - report.boundary_size // 2 - 1 == len(g) - len(tl)
        assert tl <= boundary_vertices(g) == report.boundary


def test_three_area_expressions_random(random_polyominoes):
    from gridtrees.polyomino import random_simple_grid_graph
    import random

    rng = random.Random(5)
    graphs = list(random_polyominoes) + [random_simple_grid_graph(rng.randint(100, 200), rng) for _ in range(10)]
    for g in graphs:
        report = check_simple(g)
        assert report.is_simple
        assert report.boundary_size == trace_perimeter(g)
        assert area(g) == len(g) - report.boundary_size // 2 - 1 == len(g) - len(top_left_boundary(g))


small_sets = st.sets(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=20)


@settings(max_examples=200, deadline=None)
@given(small_sets, st.integers(-50, 50), st.integers(-50, 50))
def test_simplicity_translation_invariant(pts, dx, dy):
    g = induced_grid_graph(pts)
    a, b = check_simple(g), check_simple(g.translate(dx, dy))
    assert a.is_simple == b.is_simple
    assert a.boundary_size == b.boundary_size and a.area == b.area


@settings(max_examples=200, deadline=None)
@given(small_sets)
def test_faces_of_induced_graph(pts):
    g = induced_grid_graph(pts)
    expected = {
        (x, y)
        for x, y in pts
        if {(x - 1, y), (x - 1, y + 1), (x, y + 1)} <= pts
    }
    assert {tuple(c.bottom_right) for c in faces(g)} == expected
