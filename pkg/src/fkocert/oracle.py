"""Brute-force oracles over all assignments / sign vectors.

Independent second route used for soundness checks: everything here is
exact integer arithmetic (numpy int64 on counts that stay tiny), kept
deliberately separate from the Fraction-based verifier.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cnf import Cnf

__all__ = [
    "truth_table",
    "sat_literal_counts",
    "nae_counts",
    "not3xor_counts",
    "brute_force_unsat",
    "max_quadform",
]

_CHUNK_BITS = 20


def _var_values(idx: np.ndarray, var: int) -> np.ndarray:
    """Value of x_var over a block of assignment indices (bit var-1)."""
    return (idx >> (var - 1)) & 1


def truth_table(cnf: Cnf) -> np.ndarray:
    """(m, 2^n) uint8 matrix of per-clause true-literal counts.

    Assignment j assigns bit i-1 of j to x_i.  Only for small n.
    """
    if cnf.n > 24:
        raise ValueError("truth_table is for small n")
    idx = np.arange(1 << cnf.n, dtype=np.int64)
    rows = []
    for cl in cnf.clauses:
        cnt = np.zeros(idx.shape, dtype=np.uint8)
        for v, p in cl.literals():
            cnt += (_var_values(idx, v) == p).astype(np.uint8)
        rows.append(cnt)
    return np.array(rows, dtype=np.uint8).reshape(cnf.m, 1 << cnf.n)


def sat_literal_counts(cnf: Cnf) -> np.ndarray:
    """Total true literals per assignment, over all 2^n assignments."""
    return truth_table(cnf).astype(np.int64).sum(axis=0)


def nae_counts(cnf: Cnf) -> np.ndarray:
    """NAE-satisfied clause count per assignment."""
    t = truth_table(cnf)
    return (((t == 1) | (t == 2)).astype(np.int64)).sum(axis=0)


def not3xor_counts(cnf: Cnf) -> np.ndarray:
    """Clauses with an even number of true literals, per assignment."""
    t = truth_table(cnf)
    return ((t % 2 == 0).astype(np.int64)).sum(axis=0)


def brute_force_unsat(cnf: Cnf, cap: int = 25) -> bool:
    """Exhaustively decide unsatisfiability.  Raises when n exceeds cap."""
    if cnf.n > cap:
        raise ValueError(f"n={cnf.n} exceeds brute-force cap {cap}")
    if cnf.m == 0:
        return False
    total = 1 << cnf.n
    step = 1 << min(_CHUNK_BITS, cnf.n)
    for start in range(0, total, step):
        idx = np.arange(start, min(start + step, total), dtype=np.int64)
        alive = np.ones(idx.shape, dtype=bool)
        for cl in cnf.clauses:
            sat = np.zeros(idx.shape, dtype=bool)
            for v, p in cl.literals():
                sat |= _var_values(idx, v) == p
            alive &= sat
            if not alive.any():
                break
        if alive.any():
            return False
    return True


def max_quadform(m2: list[list[int]]) -> Fraction:
    """max over sign vectors a in {-1,+1}^n of a^T M a, for M = m2/2.

    `m2` is the doubled matrix with integer entries (exact).  n <= 20.
    """
    n = len(m2)
    if n > 20:
        raise ValueError("max_quadform is for small n")
    mat = np.array(m2, dtype=np.int64)
    best = None
    total = 1 << n
    step = 1 << min(16, n)
    for start in range(0, total, step):
        idx = np.arange(start, min(start + step, total), dtype=np.int64)
        signs = np.empty((idx.shape[0], n), dtype=np.int64)
        for i in range(n):
            signs[:, i] = 2 * ((idx >> i) & 1) - 1
        vals = np.einsum("ai,ij,aj->a", signs, mat, signs)
        blockmax = int(vals.max())
        best = blockmax if best is None else max(best, blockmax)
    return Fraction(best, 2)
