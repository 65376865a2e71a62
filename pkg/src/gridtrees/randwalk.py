"""Random walks on grid graphs.

Exact absorption and escape probabilities (rational arithmetic throughout),
the truncated half-plane graphs used to bound multipliers from above, and
uniform spanning-tree samplers for Monte-Carlo cross-checks.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .lattice import GridGraph, Vertex, induced_grid_graph, make_edge, page_key
from .linalg import solve_rational
from .treecount import prefix_graphs


class WalkError(ValueError):
    pass


# --- absorbing chains ------------------------------------------------------


@dataclass(frozen=True)
class AbsorbingChain:
    """Simple random walk on ``graph`` stopped on hitting ``absorbing``.

    ``states`` lists the absorbing states first, then the transient states
    that can be reached from the starting vertices (page order).
    """

    graph: GridGraph
    absorbing: tuple
    transient: tuple

    @classmethod
    def from_graph(cls, g: GridGraph, absorbing: Iterable, starts: Iterable) -> "AbsorbingChain":
        absorbing = tuple(sorted({Vertex(*a) for a in absorbing}, key=page_key))
        if not absorbing:
            raise WalkError("no absorbing states")
        for a in absorbing:
            if a not in g.vertices:
                raise WalkError(f"absorbing state {a} not in graph")
        stop = set(absorbing)
        seen: set[Vertex] = set()
        queue = deque()
        for s in starts:
            s = Vertex(*s)
            if s not in g.vertices:
                raise WalkError(f"start {s} not in graph")
            if s not in stop and s not in seen:
                seen.add(s)
                queue.append(s)
        hits_absorbing = False
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w in stop:
                    hits_absorbing = True
                elif w not in seen:
                    seen.add(w)
                    queue.append(w)
        if seen and not hits_absorbing:
            raise WalkError("walk cannot terminate")
        return cls(g, absorbing, tuple(sorted(seen, key=page_key)))

    @property
    def states(self) -> tuple:
        return self.absorbing + self.transient

    def transition_row(self, u: Vertex) -> dict[Vertex, Fraction]:
        if u in self.absorbing:
            return {u: Fraction(1)}
        nbrs = self.graph.adjacency[u]
        row: dict[Vertex, Fraction] = {}
        for w in nbrs:
            row[w] = row.get(w, Fraction(0)) + Fraction(1, len(nbrs))
        return row

    def absorption(self, target: Vertex) -> dict[Vertex, Fraction]:
        """Column of ``B = (I - Q)^-1 R`` for ``target``, keyed by transient state."""
        target = Vertex(*target)
        if target not in self.absorbing:
            raise WalkError("target is not absorbing")
        index = {u: i for i, u in enumerate(self.transient)}
        rows, rhs = [], []
        # each equation scaled by the degree so coefficients stay integral
        for u in self.transient:
            nbrs = self.graph.adjacency[u]
            row = {index[u]: len(nbrs)}
            hits = 0
            for w in nbrs:
                if w in index:
                    row[index[w]] = row.get(index[w], 0) - 1
                elif w == target:
                    hits += 1
            rows.append(row)
            rhs.append(hits)
        x = solve_rational(rows, rhs)
        return dict(zip(self.transient, x))


def absorption_probability(g: GridGraph, start: Vertex, absorb_at: Iterable, target: Vertex) -> Fraction:
    start, target = Vertex(*start), Vertex(*target)
    absorb_at = {Vertex(*a) for a in absorb_at}
    if start in absorb_at:
        raise WalkError("start is an absorbing state")
    if target not in absorb_at:
        raise WalkError("target is not absorbing")
    chain = AbsorbingChain.from_graph(g, absorb_at, [start])
    return chain.absorption(target)[start]


def escape_probability(g: GridGraph, v: Vertex, b: Vertex) -> Fraction:
    """Chance a walk from ``v`` reaches ``b`` before coming back to ``v``."""
    v, b = Vertex(*v), Vertex(*b)
    if v == b:
        raise WalkError("v and b must differ")
    nbrs = g.adjacency[v]
    if not nbrs or not any(b in comp and v in comp for comp in g.components()):
        raise WalkError("v and b lie in different components")
    chain = AbsorbingChain.from_graph(g, [v, b], nbrs)
    h = chain.absorption(b) if chain.transient else {}
    total = sum((Fraction(1) if u == b else h[u]) for u in nbrs)
    return total / len(nbrs)


# --- escape triples ----------------------------------------------------------


@dataclass(frozen=True)
class EscapeTriple:
    E: Fraction
    Q: Fraction
    P: Fraction

    @property
    def multiplier(self) -> Fraction:
        return 2 / (1 - self.P)

    def multiplier_forms(self) -> tuple[Fraction, Fraction, Fraction]:
        return (
            2 / (1 - self.P),
            (2 - self.Q) / (1 - self.Q),
            2 * self.E / (2 * self.E - 1),
        )


def _corner_neighbors(v: Vertex) -> tuple[Vertex, Vertex]:
    return Vertex(v.x, v.y + 1), Vertex(v.x - 1, v.y)


def _component_with_unit_square(g: GridGraph, v: Vertex) -> GridGraph:
    v = Vertex(*v)
    _, h = prefix_graphs(g, v)
    a, b = _corner_neighbors(v)
    w = Vertex(v.x - 1, v.y + 1)
    square = [(v, a), (v, b), (a, w), (b, w)]
    if not all(p in h for p in (a, b, w)) or not all(h.has_edge(p, q) for p, q in square):
        raise WalkError("v is in the top-left boundary")
    comp = next(c for c in h.components() if v in c)
    return h.subgraph(comp)


def escape_triple(g: GridGraph, v: Vertex) -> EscapeTriple:
    """Escape quantities of ``v`` on the component of ``H_v`` holding ``v``.

    E and Q come from the same chain (absorbed at v or b), so one solve
    serves both; v's only neighbours in ``H_v`` are a and b.
    """
    v = Vertex(*v)
    h0 = _component_with_unit_square(g, v)
    a, b = _corner_neighbors(v)
    chain = AbsorbingChain.from_graph(h0, {v, b}, [a])
    to_v = chain.absorption(v)
    Q = to_v[a]
    nbrs = h0.adjacency[v]
    E = sum((Fraction(1) if u == b else 1 - to_v[u]) for u in nbrs) / len(nbrs)
    if E != Fraction(1, 2) + (1 - Q) / 2:
        raise ArithmeticError(f"escape identity broken at {v}: E={E}, Q={Q}")
    return EscapeTriple(E, Q, Q / (2 - Q))


# --- truncated half-plane graphs ----------------------------------------------

ORIGIN = Vertex(0, 0)


def in_half_plane(p: Vertex) -> bool:
    """Membership in the region of lattice points up to the origin in page order."""
    return p.y >= 1 or (p.y == 0 and p.x <= 0)


@dataclass(frozen=True)
class TruncatedU:
    k: int
    graph: GridGraph


@lru_cache(maxsize=None)
def build_truncated_u(k: int) -> TruncatedU:
    if k < 1:
        raise ValueError("k must be at least 1")
    dist = {ORIGIN: 0}
    queue = deque([ORIGIN])
    while queue:
        u = queue.popleft()
        if dist[u] == k:
            continue
        for w in (Vertex(u.x + 1, u.y), Vertex(u.x - 1, u.y), Vertex(u.x, u.y + 1), Vertex(u.x, u.y - 1)):
            if in_half_plane(w) and w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    ball = induced_grid_graph(dist)
    keep = [p for p in ball.vertices if ball.degree(p) != 1]
    return TruncatedU(k, ball.subgraph(keep))


@lru_cache(maxsize=None)
def Q_of(k: int) -> Fraction:
    u = build_truncated_u(k).graph
    a, b = _corner_neighbors(ORIGIN)
    return absorption_probability(u, a, {ORIGIN, b}, ORIGIN)


def E_of(k: int) -> Fraction:
    a, b = _corner_neighbors(ORIGIN)
    return escape_probability(build_truncated_u(k).graph, ORIGIN, b)


def F(k: int) -> Fraction:
    """Upper bound on the multiplier of any vertex of depth ``k``."""
    if k < 2:
        raise ValueError("F is defined for k >= 2")
    q = Q_of(k)
    return (2 - q) / (1 - q)


def depth(g: GridGraph, v: Vertex) -> int:
    """Largest k such that the truncated graph of size k, placed at ``v``, sits in ``H_v``."""
    v = Vertex(*v)
    if v not in g.vertices:
        raise KeyError("vertex not in graph")
    k = 1
    while True:
        u = build_truncated_u(k + 1).graph
        if len(u) > len(g):
            return k
        verts_ok = all(p.translate(v.x, v.y) in g.vertices for p in u.vertices)
        if not verts_ok or not all(
            make_edge(p.translate(v.x, v.y), q.translate(v.x, v.y)) in g.edges for p, q in u.edges
        ):
            return k
        k += 1


# --- uniform spanning trees ------------------------------------------------


def rng_stream(seed: int, index: int = 0) -> random.Random:
    """Independent reproducible generator for stream ``index`` of ``seed``."""
    return random.Random(f"gridtrees:{int(seed)}:{int(index)}")


def _require_connected(g: GridGraph) -> None:
    if not g.is_connected():
        raise WalkError("graph is disconnected")


def wilson_tree(g: GridGraph, rng: random.Random) -> frozenset:
    """Uniform spanning tree by loop-erased random walks."""
    adj = g.adjacency
    order = g.order
    in_tree = {order[0]}
    nxt: dict[Vertex, Vertex] = {}
    edges = []
    for start in order[1:]:
        u = start
        while u not in in_tree:
            nbrs = adj[u]
            nxt[u] = nbrs[rng.randrange(len(nbrs))]
            u = nxt[u]
        u = start
        while u not in in_tree:
            in_tree.add(u)
            edges.append(make_edge(u, nxt[u]))
            u = nxt[u]
    return frozenset(edges)


def aldous_broder_tree(g: GridGraph, rng: random.Random) -> frozenset:
    """Uniform spanning tree from first-entrance edges of one long walk."""
    adj = g.adjacency
    u = g.order[0]
    seen = {u}
    edges = []
    n = len(g)
    while len(seen) < n:
        nbrs = adj[u]
        w = nbrs[rng.randrange(len(nbrs))]
        if w not in seen:
            seen.add(w)
            edges.append(make_edge(u, w))
        u = w
    return frozenset(edges)


SAMPLERS = {"wilson": wilson_tree, "aldous-broder": aldous_broder_tree}


def sample_uniform_spanning_tree(g: GridGraph, seed: int, method: str = "wilson") -> frozenset:
    _require_connected(g)
    try:
        sampler = SAMPLERS[method]
    except KeyError:
        raise ValueError(f"unknown sampler {method!r}") from None
    return sampler(g, rng_stream(seed))


def sample_spanning_trees(g: GridGraph, samples: int, seed: int, method: str = "wilson"):
    """Yield ``samples`` independent uniform spanning trees from one stream."""
    _require_connected(g)
    sampler = SAMPLERS[method]
    rng = rng_stream(seed)
    for _ in range(samples):
        yield sampler(g, rng)


@dataclass(frozen=True)
class PEstimate:
    estimate: float
    exact: Fraction
    samples: int
    stderr: float

    @property
    def consistent(self) -> bool:
        """Within four binomial standard errors of the exact value."""
        gap = abs(self.estimate - float(self.exact))
        if self.stderr == 0:
            return gap == 0
        return gap <= 4 * self.stderr


def estimate_P(g: GridGraph, v: Vertex, samples: int, seed: int, method: str = "wilson") -> PEstimate:
    """Monte-Carlo share of spanning trees of ``H_v`` using both corner edges at ``v``."""
    if samples <= 0:
        raise ValueError("no samples")
    v = Vertex(*v)
    h0 = _component_with_unit_square(g, v)
    exact = escape_triple(g, v).P
    a, b = _corner_neighbors(v)
    ea, eb = make_edge(v, a), make_edge(v, b)
    hits = sum(1 for t in sample_spanning_trees(h0, samples, seed, method) if ea in t and eb in t)
    p = float(exact)
    return PEstimate(hits / samples, exact, samples, math.sqrt(p * (1 - p) / samples))
