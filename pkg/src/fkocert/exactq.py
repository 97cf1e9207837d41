"""Exact rational vectors and matrices.

Everything on the certified verification path is computed with
`fractions.Fraction`; floating point never enters any accept/reject
decision.  Vectors are tuples of Fractions, matrices are tuples of row
tuples.  Certificate entries live on the grid of integer multiples of
1/n^(2c) -- `snap_to_grid` rounds onto that grid and `is_grid_multiple`
checks membership.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction
QVec = Sequence[Fraction]
QMat = Sequence[Sequence[Fraction]]

__all__ = [
    "Rat",
    "QVec",
    "QMat",
    "rat",
    "vec",
    "mat",
    "inner_prod",
    "mat_vec",
    "quadratic_form",
    "norm_inf",
    "gram_dev",
    "grid_denominator",
    "is_grid_multiple",
    "snap_to_grid",
    "snap_up_to_grid",
]


def rat(x) -> Fraction:
    """Coerce ints, floats, strings, or Fractions to an exact Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries: Iterable) -> tuple[Fraction, ...]:
    return tuple(rat(x) for x in entries)


def mat(rows: Iterable[Iterable]) -> tuple[tuple[Fraction, ...], ...]:
    out = tuple(vec(row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("ragged matrix")
    return out


def inner_prod(u: QVec, v: QVec) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(m: QMat, v: QVec) -> tuple[Fraction, ...]:
    return tuple(inner_prod(row, v) for row in m)


def quadratic_form(a: QVec, m: QMat) -> Fraction:
    """a^T m a, exactly."""
    return inner_prod(a, mat_vec(m, a))


def norm_inf(v: QVec) -> Fraction:
    return max((abs(x) for x in v), default=Fraction(0))


def gram_dev(rows: QMat) -> tuple[Fraction, Fraction]:
    """Deviation of the rows' Gram matrix from the identity.

    Returns (max |<v_i, v_j>| over i != j, max |<v_i, v_i> - 1|).
    """
    off = Fraction(0)
    diag = Fraction(0)
    for i, vi in enumerate(rows):
        for j in range(i, len(rows)):
            g = inner_prod(vi, rows[j])
            if i == j:
                diag = max(diag, abs(g - 1))
            else:
                off = max(off, abs(g))
    return off, diag


def grid_denominator(n: int, c: int) -> int:
    """Common denominator n^(2c) of certificate entries."""
    if n < 1 or c < 1:
        raise ValueError("need n >= 1 and c >= 1")
    return n ** (2 * c)


def is_grid_multiple(x: Fraction, n: int, c: int) -> bool:
    """True iff x * n^(2c) is an integer."""
    return grid_denominator(n, c) % rat(x).denominator == 0


def snap_to_grid(x, n: int, c: int) -> Fraction:
    """Nearest integer multiple of 1/n^(2c) to x (ties round up).

    The result is always within 1/n^(2c) of x.
    """
    d = grid_denominator(n, c)
    scaled = rat(x) * d
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    return Fraction(q, d)


def snap_up_to_grid(x, n: int, c: int) -> Fraction:
    """Least integer multiple of 1/n^(2c) that is >= x."""
    d = grid_denominator(n, c)
    scaled = rat(x) * d
    q, r = divmod(scaled.numerator, scaled.denominator)
    if r:
        q += 1
    return Fraction(q, d)
