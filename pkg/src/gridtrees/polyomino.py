"""Polyomino generators: the cell sets behind simple grid graphs."""

from __future__ import annotations

import random
from typing import Iterator

from .lattice import Cell, GridGraph, Vertex, check_simple, graph_from_cells


def normalize(cells) -> frozenset:
    """Translate so the lowest bottom-right x and y are both zero."""
    cells = list(cells)
    mx = min(c.bottom_right.x for c in cells)
    my = min(c.bottom_right.y for c in cells)
    return frozenset(Cell(Vertex(c.bottom_right.x - mx, c.bottom_right.y - my)) for c in cells)


def fixed_polyominoes(max_cells: int) -> Iterator[frozenset]:
    """Every fixed polyomino (up to translation) with 1..max_cells cells."""
    level = {frozenset([Cell(Vertex(0, 0))])}
    for n in range(1, max_cells + 1):
        yield from sorted(level, key=sorted)
        if n == max_cells:
            return
        grown = set()
        for poly in level:
            for c in poly:
                for nb in c.neighbors():
                    if nb not in poly:
                        grown.add(normalize(poly | {nb}))
        level = grown


def simple_grid_graphs(max_faces: int) -> Iterator[GridGraph]:
    """Every simple grid graph with at most ``max_faces`` faces, up to translation."""
    for poly in fixed_polyominoes(max_faces):
        g = graph_from_cells(poly)
        if check_simple(g).is_simple:
            yield g


def random_simple_polyomino(n_cells: int, rng: random.Random) -> frozenset:
    """Grow a hole-free polyomino one random cell at a time."""
    if n_cells < 1:
        raise ValueError("need at least one cell")
    cells = {Cell(Vertex(0, 0))}
    while len(cells) < n_cells:
        frontier = sorted({nb for c in cells for nb in c.neighbors() if nb not in cells})
        rng.shuffle(frontier)
        for cand in frontier:
            trial = cells | {cand}
            if check_simple(graph_from_cells(trial)).is_simple:
                cells = trial
                break
        else:
            raise RuntimeError("no cell keeps the polyomino simple")
    return frozenset(cells)


def random_simple_grid_graph(n_cells: int, rng: random.Random) -> GridGraph:
    return graph_from_cells(random_simple_polyomino(n_cells, rng))
