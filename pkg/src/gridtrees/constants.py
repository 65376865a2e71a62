"""Lattice constants and outward-rounded rational brackets for them.

Comparisons against irrational constants go through the brackets: a bound
counts as certified only when it holds for every value inside the bracket.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

CATALAN_DIGITS = "0.915965594177219015054603514933"

_CTX = mpmath.mp.clone()
_CTX.dps = 60

CATALAN = _CTX.mpf(CATALAN_DIGITS)
BULK_LIMIT = 4 * CATALAN / _CTX.pi  # tree entropy of the square lattice
LN_B = BULK_LIMIT
B = _CTX.exp(BULK_LIMIT)
LN_4 = _CTX.log(4)

# the Catalan digits above are good to ~30 places; brackets are wider than that
_MARGIN = Fraction(1, 10**28)


def _bracket(x) -> tuple[Fraction, Fraction]:
    f = Fraction(_CTX.nstr(x, 50, strip_zeros=False))
    return f - _MARGIN, f + _MARGIN


BULK_LO, BULK_HI = _bracket(BULK_LIMIT)
LN_B_LO, LN_B_HI = BULK_LO, BULK_HI
B_LO, B_HI = _bracket(B)
LN_4_LO, LN_4_HI = _bracket(LN_4)


def ln_bracket(n: int) -> tuple[Fraction, Fraction]:
    """Rational bracket around ``ln(n)`` for a positive integer."""
    if n <= 0:
        raise ValueError("logarithm of a non-positive integer")
    if n == 1:
        return Fraction(0), Fraction(0)
    value = _CTX.log(_CTX.mpf(n))
    f = Fraction(_CTX.nstr(value, 50, strip_zeros=False))
    eps = abs(f) / 10**40 + Fraction(1, 10**40)
    return f - eps, f + eps


def ln_exact(n: int) -> float:
    """Natural log of a (possibly huge) positive integer, as a float."""
    return float(_CTX.log(_CTX.mpf(n)))
