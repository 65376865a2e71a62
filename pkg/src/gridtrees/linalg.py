"""Exact linear algebra on sparse integer and rational matrices.

Matrices are lists of ``{column: value}`` row dicts.  Both routines keep the
fill-in of banded systems inside the band, which is what grid Laplacians in
page order look like.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence


class SingularMatrixError(ArithmeticError):
    pass


def _bareiss(a: list[dict], n: int):
    """Fraction-free elimination of the first ``n`` columns, in place.

    Rows whose pivot-column entry is zero are not touched at that step; their
    pending Bareiss scaling (a ratio of leading pivots) is applied the next
    time they take part in an update.  Every division is exact.  Columns past
    ``n`` (an augmented right-hand side) ride along.  Returns the pivots and
    the sign of the row permutation, or ``None`` when the matrix is singular.
    Each returned row is an integer multiple of the equation it stands for,
    which is all back substitution needs.
    """
    last = [0] * n
    pivots = [1]  # pivots[s] is the pivot used at step s; pivots[0] = 1
    sign = 1

    def refresh(i: int, s: int) -> None:
        t = last[i]
        if t != s:
            num, den = pivots[s], pivots[t]
            a[i] = {j: v * num // den for j, v in a[i].items()}
            last[i] = s

    for k in range(n):
        if not a[k].get(k):
            swap = next((i for i in range(k + 1, n) if a[i].get(k)), None)
            if swap is None:
                return None
            a[k], a[swap] = a[swap], a[k]
            last[k], last[swap] = last[swap], last[k]
            sign = -sign
        refresh(k, k)
        prow = a[k]
        piv = prow[k]
        prev = pivots[k]
        tail = [(j, v) for j, v in prow.items() if j > k]
        for i in range(k + 1, n):
            lead = a[i].get(k)
            if not lead:
                continue
            refresh(i, k)
            row = a[i]
            lead = row.pop(k)
            combined = {j: v * piv for j, v in row.items()}
            for j, v in tail:
                combined[j] = combined.get(j, 0) - lead * v
            a[i] = {j: v // prev for j, v in combined.items() if v}
            last[i] = k + 1
        pivots.append(piv)
    return pivots, sign


def bareiss_det(rows: Sequence[Mapping[int, int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(rows)
    a = [{j: int(v) for j, v in r.items() if v} for r in rows]
    done = _bareiss(a, n)
    if done is None:
        return 0
    pivots, sign = done
    return sign * pivots[n]


def solve_rational(
    rows: Sequence[Mapping[int, object]], rhs: Sequence[object]
) -> list[Fraction]:
    """Solve ``A x = b`` exactly over the rationals.

    Gaussian elimination on sparse rows.  The pivot for column ``k`` is the
    diagonal entry when non-zero, otherwise the first lower row with a
    non-zero entry there.
    """
    n = len(rows)
    if len(rhs) != n:
        raise ValueError("dimension mismatch")
    if all(isinstance(v, int) for r in rows for v in r.values()) and all(isinstance(v, int) for v in rhs):
        return _solve_integer(rows, rhs)
    a = [{j: Fraction(v) for j, v in r.items() if v} for r in rows]
    b = [Fraction(v) for v in rhs]
    for k in range(n):
        if not a[k].get(k):
            swap = next((i for i in range(k + 1, n) if a[i].get(k)), None)
            if swap is None:
                raise SingularMatrixError("matrix is singular")
            a[k], a[swap] = a[swap], a[k]
            b[k], b[swap] = b[swap], b[k]
        prow = a[k]
        piv = prow[k]
        tail = [(j, v) for j, v in prow.items() if j > k]
        for i in range(k + 1, n):
            lead = a[i].get(k)
            if not lead:
                continue
            f = lead / piv
            row = a[i]
            del row[k]
            for j, v in tail:
                nv = row.get(j, 0) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
            b[i] -= f * b[k]
    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        s = b[k]
        for j, v in a[k].items():
            if j > k:
                s -= v * x[j]
        x[k] = s / a[k][k]
    return x


def _solve_integer(rows, rhs) -> list[Fraction]:
    # augment b as column n; elimination stays in integers
    n = len(rows)
    a = [{j: int(v) for j, v in r.items() if v} for r in rows]
    for r, v in zip(a, rhs):
        if v:
            r[n] = int(v)
    if _bareiss(a, n) is None:
        raise SingularMatrixError("matrix is singular")
    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        row = a[k]
        s = Fraction(row.get(n, 0))
        for j, v in row.items():
            if k < j < n:
                s -= v * x[j]
        x[k] = s / row[k]
    return x
