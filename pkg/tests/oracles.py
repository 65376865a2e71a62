"""Independent reference computations used only by the tests."""

from __future__ import annotations

from fractions import Fraction
from itertools import product


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x


def spanning_trees(vertices, edges):
    """Enumerate spanning trees as frozensets of edges (backtracking over edges)."""
    vertices = list(vertices)
    edges = sorted(edges)
    need = len(vertices) - 1
    out = []

    def rec(i, chosen, parent):
        if len(chosen) == need:
            out.append(frozenset(chosen))
            return
        if len(edges) - i < need - len(chosen):
            return
        u, w = edges[i]
        dsu = _DSU(vertices)
        dsu.parent = dict(parent)
        ru, rw = dsu.find(u), dsu.find(w)
        if ru != rw:
            p2 = dict(dsu.parent)
            p2[ru] = rw
            rec(i + 1, chosen + [edges[i]], p2)
        rec(i + 1, chosen, dsu.parent)

    rec(0, [], {v: v for v in vertices})
    return out


def brute_force_tau(g) -> int:
    if len(g) == 1:
        return 1
    return len(spanning_trees(g.vertices, g.edges))


def dense_fraction_det(matrix) -> Fraction:
    """Plain Gaussian elimination over Fractions with row swaps."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return det


def box_subsets(width: int, height: int):
    """All non-empty vertex subsets of a width x height box of lattice points."""
    pts = [(x, y) for x in range(width) for y in range(height)]
    for mask in product((0, 1), repeat=len(pts)):
        chosen = [p for p, m in zip(pts, mask) if m]
        if chosen:
            yield chosen


def trace_perimeter(g) -> int:
    """Boundary length as the number of face sides shared with no other face."""
    from gridtrees.lattice import faces

    count = {}
    for c in faces(g):
        for s in c.sides:
            count[s] = count.get(s, 0) + 1
    return sum(1 for n in count.values() if n == 1)
