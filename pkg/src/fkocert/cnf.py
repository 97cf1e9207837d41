"""3CNF formulas: clauses, assignments, DIMACS io, random model, counts.

A clause holds exactly three literals over pairwise distinct variables.
Variables are numbered 1..n, polarity 1 means the positive literal x_i,
polarity 0 the negated literal.  An assignment is a sequence of n bits
(index i-1 holds the value of x_i); the matching sign vector uses
a(i) = 2*A(i) - 1 in {-1, +1}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Assignment = Sequence[int]
SignVector = Sequence[int]

__all__ = [
    "Clause",
    "Cnf",
    "DimacsError",
    "parse_dimacs",
    "to_dimacs",
    "gen_random_3cnf",
    "lit_true",
    "not_sat",
    "is_nae",
    "is_3xor",
    "true_literal_count",
    "lit_positions",
    "count_sat_literals",
    "count_nae",
    "i_imbalance",
    "imbalance",
    "to_signs",
    "from_signs",
    "all_assignments",
]


class DimacsError(ValueError):
    """Malformed DIMACS input."""


@dataclass(frozen=True)
class Clause:
    """Three literals on distinct variables: vars (1-based), pols in {0,1}."""

    vars: tuple[int, int, int]
    pols: tuple[int, int, int]

    def __post_init__(self) -> None:
        if len(self.vars) != 3 or len(self.pols) != 3:
            raise ValueError("clause must have exactly three literals")
        if len(set(self.vars)) != 3:
            raise ValueError(f"repeated variable in clause: {self.vars}")
        if any(v < 1 for v in self.vars):
            raise ValueError(f"variables are 1-based: {self.vars}")
        if any(p not in (0, 1) for p in self.pols):
            raise ValueError(f"polarities must be 0/1: {self.pols}")

    def literals(self) -> Iterator[tuple[int, int]]:
        return zip(self.vars, self.pols)

    def neg_count(self) -> int:
        return 3 - sum(self.pols)


@dataclass(frozen=True)
class Cnf:
    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        for k, cl in enumerate(self.clauses):
            if max(cl.vars) > self.n:
                raise ValueError(f"clause {k} uses variable beyond n={self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)


def lit_true(assignment: Assignment, var: int, pol: int) -> bool:
    return assignment[var - 1] == pol


def true_literal_count(clause: Clause, assignment: Assignment) -> int:
    return sum(1 for v, p in clause.literals() if lit_true(assignment, v, p))


def not_sat(clause: Clause, assignment: Assignment) -> bool:
    """All three literals false."""
    return true_literal_count(clause, assignment) == 0


def is_nae(clause: Clause, assignment: Assignment) -> bool:
    """Not-all-equal satisfied: literal values neither all true nor all false."""
    return true_literal_count(clause, assignment) in (1, 2)


def is_3xor(clause: Clause, assignment: Assignment) -> bool:
    """Odd number (1 or 3) of true literals."""
    return true_literal_count(clause, assignment) % 2 == 1


def lit_positions(cnf: Cnf, var: int, pol: int) -> set[tuple[int, int]]:
    """All (clause index, slot) positions holding the literal x_var^pol.

    Slots are 1-based.
    """
    out: set[tuple[int, int]] = set()
    for k, cl in enumerate(cnf.clauses):
        for slot, (v, p) in enumerate(cl.literals(), start=1):
            if v == var and p == pol:
                out.add((k, slot))
    return out


def count_sat_literals(cnf: Cnf, assignment: Assignment) -> int:
    return sum(true_literal_count(cl, assignment) for cl in cnf.clauses)


def count_nae(cnf: Cnf, assignment: Assignment) -> int:
    return sum(1 for cl in cnf.clauses if is_nae(cl, assignment))


def i_imbalance(cnf: Cnf, var: int) -> int:
    """|#positive occurrences of x_var - #negative occurrences|."""
    pos = neg = 0
    for cl in cnf.clauses:
        for v, p in cl.literals():
            if v == var:
                if p:
                    pos += 1
                else:
                    neg += 1
    return abs(pos - neg)


def imbalance(cnf: Cnf) -> int:
    return sum(i_imbalance(cnf, i) for i in range(1, cnf.n + 1))


def to_signs(assignment: Assignment) -> tuple[int, ...]:
    return tuple(2 * b - 1 for b in assignment)


def from_signs(signs: SignVector) -> tuple[int, ...]:
    if any(s not in (-1, 1) for s in signs):
        raise ValueError("sign vector entries must be +-1")
    return tuple((s + 1) // 2 for s in signs)


def all_assignments(n: int) -> Iterator[tuple[int, ...]]:
    """All 2^n assignments; bit i-1 of the counter is the value of x_i."""
    for idx in range(1 << n):
        yield tuple((idx >> i) & 1 for i in range(n))


# ---------------------------------------------------------------- DIMACS --


def parse_dimacs(text: str) -> Cnf:
    """Parse DIMACS CNF, requiring width-3 clauses on distinct variables.

    Clause order and literal slot order are preserved as written.
    """
    n = None
    m = None
    lits: list[int] = []
    clauses: list[Clause] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from exc
            if n < 0 or m < 0:
                raise DimacsError(f"line {lineno}: negative header counts")
            continue
        if n is None:
            raise DimacsError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError as exc:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from exc
            if lit == 0:
                if len(lits) != 3:
                    raise DimacsError(
                        f"line {lineno}: clause of width {len(lits)}, want 3"
                    )
                vars_ = tuple(abs(x) for x in lits)
                pols = tuple(1 if x > 0 else 0 for x in lits)
                if len(set(vars_)) != 3:
                    raise DimacsError(f"line {lineno}: repeated variable in clause")
                if max(vars_) > n:
                    raise DimacsError(f"line {lineno}: variable beyond n={n}")
                clauses.append(Clause(vars_, pols))  # type: ignore[arg-type]
                lits = []
            else:
                lits.append(lit)
    if n is None:
        raise DimacsError("missing header")
    if lits:
        raise DimacsError("trailing literals without terminating 0")
    if m is not None and m != len(clauses):
        raise DimacsError(f"header declares {m} clauses, found {len(clauses)}")
    return Cnf(n, tuple(clauses))


def to_dimacs(cnf: Cnf) -> str:
    lines = [f"p cnf {cnf.n} {cnf.m}"]
    for cl in cnf.clauses:
        lines.append(
            " ".join(str(v if p else -v) for v, p in cl.literals()) + " 0"
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------- random model --


def gen_random_3cnf(n: int, m: int, seed: int) -> Cnf:
    """m clauses drawn independently, with repetitions, uniformly from the
    2^3 * C(n,3) clauses on distinct variable triples.

    Deterministic for a given seed.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        while True:
            trip = {rng.randrange(1, n + 1) for _ in range(3)}
            if len(trip) == 3:
                break
        vars_ = tuple(sorted(trip))
        bits = rng.randrange(8)
        pols = ((bits >> 2) & 1, (bits >> 1) & 1, bits & 1)
        clauses.append(Clause(vars_, pols))  # type: ignore[arg-type]
    return Cnf(n, tuple(clauses))
