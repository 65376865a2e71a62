"""Spanning-tree counts and the vertex-by-vertex multiplier function."""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .constants import ln_exact
from .lattice import GridGraph, Vertex, page_key
from .linalg import bareiss_det

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TreeCount:
    value: int

    @cached_property
    def log_value(self) -> float:
        if self.value <= 0:
            raise ValueError("log of a zero tree count")
        return ln_exact(self.value)

    def __int__(self) -> int:
        return self.value


def reduced_laplacian(vertices, adjacency) -> list[dict[int, int]]:
    """Laplacian rows in page order with the first vertex grounded."""
    order = sorted(vertices, key=page_key)
    index = {v: i - 1 for i, v in enumerate(order)}
    rows = []
    for v in order[1:]:
        i = index[v]
        row = {i: 0}
        for w in adjacency[v]:
            if w in index:
                row[i] += 1
                j = index[w]
                if j >= 0:
                    row[j] = -1
        rows.append(row)
    return rows


def _component_tau(vertices, adjacency) -> int:
    if len(vertices) == 1:
        return 1
    return bareiss_det(reduced_laplacian(vertices, adjacency))


def tau(g: GridGraph) -> TreeCount:
    """Generalized spanning-tree count: product over connected components."""
    total = 1
    for comp in g.components():
        total *= _component_tau(comp, g.adjacency)
    return TreeCount(total)


def prefix_graphs(g: GridGraph, v: Vertex) -> tuple[GridGraph | None, GridGraph]:
    """Return ``(H'_v, H_v)``, the subgraphs before ``v`` and through ``v``.

    ``H'_v`` is ``None`` for the first vertex, standing for the empty graph.
    """
    v = Vertex(*v)
    if v not in g.vertices:
        raise KeyError("vertex not in graph")
    pos = g.order.index(v)
    before = g.subgraph(g.order[:pos]) if pos else None
    return before, g.subgraph(g.order[: pos + 1])


def _tau_or_one(h: GridGraph | None) -> int:
    return 1 if h is None else tau(h).value


def multiplier(g: GridGraph, v: Vertex) -> Fraction:
    before, through = prefix_graphs(g, v)
    return Fraction(tau(through).value, _tau_or_one(before))


@dataclass(frozen=True)
class MultiplierProfile:
    order: tuple
    multipliers: tuple
    tau: int

    @property
    def log_tau(self) -> float:
        return ln_exact(self.tau)

    def as_dict(self) -> dict[Vertex, Fraction]:
        return dict(zip(self.order, self.multipliers))

    def __getitem__(self, v) -> Fraction:
        return self.as_dict()[Vertex(*v)]


def multiplier_profile(g: GridGraph) -> MultiplierProfile:
    """Multipliers of every vertex, built one vertex at a time.

    Only the component that receives the new vertex changes, so each step
    needs one determinant of that component.  Tree counts of untouched
    components are reused.
    """
    adj = g.adjacency
    comp_of: dict[Vertex, int] = {}
    members: dict[int, set] = {}
    comp_tau: dict[int, int] = {}
    mults = []
    for n, v in enumerate(g.order):
        earlier = [w for w in adj[v] if w in comp_of]
        touched = {comp_of[w] for w in earlier}
        merged = {v}
        old = 1
        for c in touched:
            merged |= members.pop(c)
            old *= comp_tau.pop(c)
        new = _component_tau(merged, adj)
        cid = n
        members[cid] = merged
        comp_tau[cid] = new
        for w in merged:
            comp_of[w] = cid
        mults.append(Fraction(new, old))

    total = 1
    for t in comp_tau.values():
        total *= t
    product = Fraction(1)
    for m in mults:
        product *= m
    if product != total:
        raise ArithmeticError("multipliers do not multiply to the tree count")
    low = [(v, m) for v, m in zip(g.order, mults) if m < 1]
    if low:
        logger.warning("multiplier below 1 at %d vertices, first %s", len(low), low[0][0])
    return MultiplierProfile(g.order, tuple(mults), total)


def heatmap_export(profile: MultiplierProfile) -> str:
    """CSV text with columns ``x,y,multiplier`` (12+ significant digits)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y", "multiplier"])
    for v, m in zip(profile.order, profile.multipliers):
        writer.writerow([v.x, v.y, format_decimal(m, 15)])
    return buf.getvalue()


def format_decimal(q: Fraction, digits: int) -> str:
    return f"{float(q):.{digits}g}" if q.denominator != 1 else str(q.numerator)
