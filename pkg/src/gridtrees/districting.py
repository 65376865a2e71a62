"""District maps on grid graphs: cut edges versus spanning tree scores.

A map assigns every vertex of a base grid graph to one of K districts.  For
simple districts of a simple base graph the cut-edge count is an affine
function of the district areas, which pins it between two lines in the
spanning tree score.
"""

from __future__ import annotations

import csv
import io
import math
from collections import defaultdict, deque
from dataclasses import dataclass

from . import constants
from .constants import ln_bracket
from .lattice import GridGraph, Vertex, area, check_simple, page_key
from .randwalk import rng_stream, wilson_tree
from .treecount import tau

HOLDS, FAILS, NA = "holds", "fails", "not-applicable"


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class DistrictPartition:
    base: GridGraph
    assignment: dict

    def __post_init__(self):
        assignment = {Vertex(*v): int(d) for v, d in self.assignment.items()}
        missing = self.base.vertices - assignment.keys()
        if missing:
            raise PartitionError(f"{len(missing)} vertices have no district, e.g. {min(missing, key=page_key)}")
        extra = assignment.keys() - self.base.vertices
        if extra:
            raise PartitionError(f"assigned vertex {min(extra, key=page_key)} is not in the graph")
        ids = sorted(set(assignment.values()))
        if ids != list(range(1, len(ids) + 1)):
            raise PartitionError(f"district ids must be 1..K, got {ids}")
        object.__setattr__(self, "assignment", assignment)

    @property
    def K(self) -> int:
        return max(self.assignment.values())

    def members(self) -> dict[int, frozenset]:
        groups = defaultdict(set)
        for v, d in self.assignment.items():
            groups[d].add(v)
        return {d: frozenset(vs) for d, vs in sorted(groups.items())}

    def district(self, i: int) -> GridGraph:
        return self.base.subgraph(self.members()[i])

    def districts(self) -> dict[int, GridGraph]:
        return {d: self.base.subgraph(vs) for d, vs in self.members().items()}

    def cut_edges(self) -> list:
        a = self.assignment
        return [e for e in self.base.edges if a[e[0]] != a[e[1]]]


@dataclass(frozen=True)
class PartitionScore:
    cut_edges: int
    district_areas: tuple
    district_taus: tuple
    spanning_score: float
    C1: int
    simple_flags: tuple
    base_simple: bool

    @property
    def all_simple(self) -> bool:
        return self.base_simple and all(self.simple_flags)


def score_partition(p: DistrictPartition) -> PartitionScore:
    districts = p.districts()
    for i, d in districts.items():
        if not d.is_connected():
            raise PartitionError(f"district {i} disconnected")
    taus = tuple(tau(d).value for d in districts.values())
    product = math.prod(taus)
    return PartitionScore(
        cut_edges=len(p.cut_edges()),
        district_areas=tuple(area(d) for d in districts.values()),
        district_taus=taus,
        spanning_score=constants.ln_exact(product),
        C1=area(p.base) + p.K - 1,
        simple_flags=tuple(check_simple(d).is_simple for d in districts.values()),
        base_simple=check_simple(p.base).is_simple,
    )


@dataclass(frozen=True)
class Verdict:
    status: str
    lhs: object = None
    rhs: object = None
    failing: tuple = ()

    @property
    def ok(self) -> bool:
        return self.status == HOLDS


def _hypothesis_failures(p: DistrictPartition, score: PartitionScore) -> tuple:
    bad = tuple(i for i, s in zip(p.members(), score.simple_flags) if not s)
    if not score.base_simple:
        bad = ("base",) + bad
    return bad


def verify_redistrict_identity(p: DistrictPartition, score: PartitionScore | None = None) -> Verdict:
    """Cut edges against Area(G) + K - 1 - sum of district areas."""
    score = score or score_partition(p)
    bad = _hypothesis_failures(p, score)
    rhs = score.C1 - sum(score.district_areas)
    if bad:
        return Verdict(NA, score.cut_edges, rhs, bad)
    return Verdict(HOLDS if score.cut_edges == rhs else FAILS, score.cut_edges, rhs)


def verify_boundss(p: DistrictPartition, score: PartitionScore | None = None) -> Verdict:
    """Sandwich of the cut-edge count between the two score lines.

    ``lhs``/``rhs`` carry the lower and upper line values as floats; the
    verdict itself comes from rational brackets.
    """
    score = score or score_partition(p)
    bad = _hypothesis_failures(p, score)
    lower, upper = sandwich_lines(score)
    if bad:
        return Verdict(NA, lower, upper, bad)
    return Verdict(HOLDS if sandwich_holds(score) else FAILS, lower, upper)


def sandwich_lines(score: PartitionScore) -> tuple[float, float]:
    s = score.spanning_score
    return score.C1 - s / float(constants.LN_B), score.C1 - s / math.log(4)


def sandwich_holds(score: PartitionScore) -> bool:
    # C1 - S/ln b <= |C|  <=>  S >= gap * ln b,  and  |C| <= C1 - S/ln 4  <=>  S <= gap * ln 4
    lo, hi = ln_bracket(math.prod(score.district_taus))
    gap = score.C1 - score.cut_edges
    lower_ok = gap <= 0 or lo >= gap * constants.LN_B_HI
    upper_ok = gap >= 0 and hi <= gap * constants.LN_4_LO
    return lower_ok and upper_ok


# --- seed partitions and the recombination chain -----------------------------


def stripe_partition(g: GridGraph, K: int) -> DistrictPartition:
    """Seed map: K x-stripes, or a sqrt(K)-grid of blocks when K is a square."""
    if K < 1 or K > len(g):
        raise PartitionError("infeasible number of districts")
    r = math.isqrt(K)
    order_x = sorted(g.vertices, key=lambda v: (v.x, -v.y))
    if r * r == K:
        cols = _chunks(order_x, r)
        assignment = {}
        for ci, col in enumerate(cols):
            for ri, block in enumerate(_chunks(sorted(col, key=page_key), r)):
                for v in block:
                    assignment[v] = ci * r + ri + 1
    else:
        assignment = {v: i + 1 for i, chunk in enumerate(_chunks(order_x, K)) for v in chunk}
    return DistrictPartition(g, assignment)


def _chunks(items: list, k: int) -> list[list]:
    n = len(items)
    bounds = [round(i * n / k) for i in range(k + 1)]
    return [items[bounds[i]:bounds[i + 1]] for i in range(k)]


def tree_partition(g: GridGraph, K: int, seed: int, pop_tolerance: float = 0.05) -> DistrictPartition:
    """Seed map by repeatedly splitting one balanced piece off a spanning tree."""
    if K < 1 or K > len(g):
        raise PartitionError("infeasible number of districts")
    rng = rng_stream(seed, 1)
    ideal = len(g) / K
    remaining = set(g.vertices)
    assignment = {}
    for d in range(1, K):
        sub = g.subgraph(remaining)
        for _ in range(1000):
            tree = wilson_tree(sub, rng)
            cuts = _balanced_cuts(sub, tree, ideal, pop_tolerance, one_sided=True)
            if cuts:
                piece = rng.choice(cuts)
                break
        else:
            raise PartitionError("could not find a balanced seed partition")
        for v in piece:
            assignment[v] = d
        remaining -= piece
    for v in remaining:
        assignment[v] = K
    return DistrictPartition(g, assignment)


def seed_partition(g: GridGraph, K: int, seed: int = 0, pop_tolerance: float = 0.05) -> DistrictPartition:
    p = stripe_partition(g, K)
    if all(d.is_connected() for d in p.districts().values()):
        return p
    return tree_partition(g, K, seed, pop_tolerance)


def _subtree_sizes(tree_adj: dict, root: Vertex) -> tuple[dict, dict]:
    parent = {root: None}
    order = [root]
    for u in order:
        for w in tree_adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    size = dict.fromkeys(order, 1)
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    return parent, size


def _balanced_cuts(sub: GridGraph, tree, ideal: float, tol: float, one_sided: bool = False) -> list[frozenset]:
    """Vertex sets split off by single tree edges, within tolerance of ``ideal``.

    Normally both sides must be balanced.  With ``one_sided`` only the piece
    returned must be (used while carving a seed map).
    """
    adj = defaultdict(list)
    for u, w in tree:
        adj[u].append(w)
        adj[w].append(u)
    root = sub.order[0]
    parent, size = _subtree_sizes(adj, root)
    n = len(sub)
    lo, hi = ideal * (1 - tol), ideal * (1 + tol)

    def ok(k):
        return lo <= k <= hi

    out = []
    for v, s in size.items():
        if v == root:
            continue
        below_ok, above_ok = ok(s), ok(n - s)
        if not one_sided and not (below_ok and above_ok):
            continue
        if below_ok or above_ok:
            below = frozenset(_collect(adj, v, parent[v]))
            if below_ok:
                out.append(below)
            if above_ok:
                out.append(sub.vertices - below)
    return out


def _collect(adj, start, blocked) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w != blocked and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


MAX_TREE_DRAWS = 64


def recom_step(p: DistrictPartition, rng, pop_tolerance: float, max_pair_draws: int = 1000) -> DistrictPartition:
    """Merge two adjacent districts and re-split them along a random spanning tree."""
    ideal = len(p.base) / p.K
    a = p.assignment
    pairs = sorted({tuple(sorted((a[u], a[w]))) for u, w in p.cut_edges()})
    if not pairs:
        raise PartitionError("no adjacent district pair")
    members = p.members()
    for _ in range(max_pair_draws):
        i, j = pairs[rng.randrange(len(pairs))]
        merged = p.base.subgraph(members[i] | members[j])
        for _ in range(MAX_TREE_DRAWS):
            tree = wilson_tree(merged, rng)
            cuts = _balanced_cuts(merged, tree, ideal, pop_tolerance)
            if cuts:
                piece = cuts[rng.randrange(len(cuts))]
                new = dict(a)
                for v in merged.vertices:
                    new[v] = i if v in piece else j
                return DistrictPartition(p.base, new)
    raise PartitionError("no balanced recombination found")


def run_ensemble(
    g: GridGraph,
    K: int,
    steps: int,
    seed: int,
    pop_tolerance: float = 0.05,
    initial: DistrictPartition | None = None,
) -> list[PartitionScore]:
    """Scores of the seed map followed by ``steps`` recombination moves."""
    if K < 2:
        raise PartitionError("need at least two districts")
    if K > len(g):
        raise PartitionError("infeasible number of districts")
    p = initial if initial is not None else seed_partition(g, K, seed, pop_tolerance)
    rng = rng_stream(seed, 0)
    scores = [score_partition(p)]
    for _ in range(steps):
        p = recom_step(p, rng, pop_tolerance)
        scores.append(score_partition(p))
    return scores


def scatter_export(scores, C1: int | None = None) -> str:
    """CSV of the ensemble with the two bounding lines as header comments."""
    buf = io.StringIO()
    if C1 is None and scores:
        C1 = scores[0].C1
    if C1 is not None:
        buf.write(f"# intercept_C1={C1}\n")
    buf.write(f"# slope_lower={-1 / float(constants.LN_B):.12g}\n")
    buf.write(f"# slope_upper={-1 / math.log(4):.12g}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "cut_edges", "spanning_score", "all_simple"])
    for step, s in enumerate(scores):
        w.writerow([step, s.cut_edges, f"{s.spanning_score:.12g}", int(s.all_simple)])
    return buf.getvalue()
