"""Upper and lower bounds on spanning-tree counts of grid graphs.

Every comparison is certified: exact integer/rational arithmetic where the
bound is rational, outward-rounded brackets where it involves the bulk
limit of the square lattice.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import constants
from .constants import ln_bracket
from .lattice import GridGraph, check_simple, rectangle, top_left_boundary
from .randwalk import F, depth
from .treecount import tau

PASS, FAIL, NA = "pass", "fail", "not-applicable"

DEFAULT_MAX_K = 12


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class BoundsReport:
    n_vertices: int
    tau: int
    ln_tau: float
    lyons_bound: float
    m: int
    lower_log: float
    upper_log: float
    refined_upper_log: float
    simple: bool
    max_k: int
    upper_would_hold: bool
    level_set_sizes: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)

    def as_text(self) -> str:
        lines = [
            f"vertices: {self.n_vertices}",
            f"tau: {self.tau}",
            f"ln_tau: {self.ln_tau:.12g}",
            f"simple: {str(self.simple).lower()}",
            f"m: {self.m}",
            f"lyons_bound: {self.lyons_bound:.12g}",
            f"lower_log: {self.lower_log:.12g}",
            f"upper_log: {self.upper_log:.12g}",
            f"refined_upper_log: {self.refined_upper_log:.12g}",
            f"max_k: {self.max_k}",
            "level_sets: " + " ".join(f"{k}:{n}" for k, n in sorted(self.level_set_sizes.items())),
        ]
        for name, verdict in self.verdicts.items():
            note = ""
            if verdict == NA:
                note = " (non-simple)"
                if name == "upper" and not self.upper_would_hold:
                    note = " (non-simple; tau <= 4^m would fail)"
            lines.append(f"{name}: {verdict}{note}")
        return "\n".join(lines) + "\n"

    CSV_FIELDS = (
        "vertices", "tau_digits", "ln_tau", "m", "simple", "lyons_bound", "lower_log",
        "upper_log", "refined_upper_log", "lyons", "lower", "upper", "refined",
    )

    def csv_row(self) -> list:
        return [
            self.n_vertices, len(str(self.tau)), f"{self.ln_tau:.12g}", self.m,
            int(self.simple), f"{self.lyons_bound:.12g}", f"{self.lower_log:.12g}",
            f"{self.upper_log:.12g}", f"{self.refined_upper_log:.12g}",
            *(self.verdicts[k] for k in ("lyons", "lower", "upper", "refined")),
        ]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BoundsReport.CSV_FIELDS)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def level_sets(g: GridGraph) -> Counter:
    return Counter(depth(g, v) for v in g.vertices)


def refined_upper_product(levels: Counter, max_k: int) -> Fraction:
    """Exact value of the product of F(min(k, max_k)) ** |G^k| over k >= 2."""
    total = Fraction(1)
    for k, n in levels.items():
        if k >= 2:
            total *= F(min(k, max_k)) ** n
    return total


def evaluate_bounds(g: GridGraph, max_k: int = DEFAULT_MAX_K) -> BoundsReport:
    if max_k < 2:
        raise BoundsError("max_k must be at least 2")
    if not g.is_connected():
        raise BoundsError("graph is disconnected")
    t = tau(g).value
    ln_lo, ln_hi = ln_bracket(t)
    n = len(g)
    m = n - len(top_left_boundary(g))
    simple = check_simple(g).is_simple
    levels = level_sets(g)

    verdicts = {
        "lyons": PASS if ln_hi < constants.BULK_LO * n else FAIL,
        "lower": PASS if ln_lo >= m * constants.LN_B_HI else FAIL,
    }
    refined_log = sum(
        math.log(F(min(k, max_k))) * c for k, c in levels.items() if k >= 2
    )
    if simple:
        verdicts["upper"] = PASS if t <= 4**m else FAIL
        verdicts["refined"] = PASS if t <= refined_upper_product(levels, max_k) else FAIL
    else:
        verdicts["upper"] = NA
        verdicts["refined"] = NA

    return BoundsReport(
        n_vertices=n,
        tau=t,
        ln_tau=float(ln_lo + ln_hi) / 2,
        lyons_bound=float(constants.BULK_LIMIT) * n,
        m=m,
        lower_log=m * float(constants.LN_B),
        upper_log=m * math.log(4),
        refined_upper_log=refined_log,
        simple=simple,
        max_k=max_k,
        upper_would_hold=t <= 4**m,
        level_set_sizes=dict(sorted(levels.items())),
        verdicts=verdicts,
    )


def bulk_limit_trend(sizes) -> list[tuple[int, float]]:
    """Rows ``(n, ln tau / |V|)`` for n-by-n vertex squares."""
    rows = []
    prev = None
    for n in sizes:
        if n < 2:
            raise BoundsError("sizes must be at least 2")
        if prev is not None and n <= prev:
            raise BoundsError("sizes must be increasing")
        prev = n
        rows.append((n, tau(rectangle(n, n)).log_value / (n * n)))
    return rows
