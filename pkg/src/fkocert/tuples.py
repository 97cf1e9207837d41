"""Even clause tuples, inconsistent collections, and their search.

A tuple of clause indices is *even* when every variable occurs an even
number of times across its members (forcing even length), and
*inconsistent* when additionally the total number of negated literals is
odd.  Under any assignment, an inconsistent even tuple always contains a
clause with an even number of true literals (a non-3XOR clause): summing
literal values over the tuple, even variable multiplicities make the
assignment contribution even, so the parity of true literals equals the
parity of negations, which is odd -- the members' parities cannot all be
odd.

A (t, k, d)-collection packs t inconsistent k-tuples with every clause
index used at most d times (counting multiplicity); any assignment then
leaves at least ceil(t/d) distinct clauses non-3XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cnf import Cnf

ClauseTuple = tuple[int, ...]

__all__ = [
    "ClauseTuple",
    "TupleCollection",
    "CollectionSearchError",
    "parity_vector",
    "is_even_tuple",
    "is_inconsistent_tuple",
    "check_collection",
    "find_collection",
]


@dataclass(frozen=True)
class TupleCollection:
    """t inconsistent k-tuples over a Cnf, clause reuse bounded by d."""

    tuples: tuple[ClauseTuple, ...]
    t: int
    k: int
    d: int


class CollectionSearchError(RuntimeError):
    """Search exhausted its budget below t_target; carries the best found."""

    def __init__(self, best: TupleCollection, t_target: int):
        super().__init__(
            f"found t={best.t} inconsistent tuples, target was {t_target}"
        )
        self.best = best
        self.t_target = t_target


def parity_vector(cnf: Cnf, index: int) -> int:
    """Parity bits of one clause as an int: bit 0 is the negation parity,
    bit i (1 <= i <= n) the occurrence parity of variable i."""
    cl = cnf.clauses[index]
    bits = cl.neg_count() & 1
    for v in cl.vars:
        bits |= 1 << v
    return bits


def _tuple_parity(cnf: Cnf, indices: Sequence[int]) -> int:
    bits = 0
    for idx in indices:
        if not 0 <= idx < cnf.m:
            raise IndexError(f"clause index {idx} out of range")
        bits ^= parity_vector(cnf, idx)
    return bits


def is_even_tuple(cnf: Cnf, indices: Sequence[int]) -> bool:
    """Every variable occurs an even number of times across the tuple."""
    return _tuple_parity(cnf, indices) >> 1 == 0


def is_inconsistent_tuple(cnf: Cnf, indices: Sequence[int]) -> bool:
    """Even tuple whose total negation count is odd."""
    return _tuple_parity(cnf, indices) == 1


def check_collection(
    cnf: Cnf, coll: TupleCollection
) -> tuple[bool, str | None]:
    """Validate a collection against cnf; returns (ok, first violation)."""
    if coll.t != len(coll.tuples):
        return False, f"t={coll.t} but {len(coll.tuples)} tuples present"
    if coll.t and coll.k % 2:
        return False, f"tuple length k={coll.k} is odd"
    if coll.d < 0:
        return False, f"negative reuse bound d={coll.d}"
    use: dict[int, int] = {}
    for pos, tup in enumerate(coll.tuples):
        if len(tup) != coll.k:
            return False, f"tuple {pos} has length {len(tup)}, want k={coll.k}"
        for idx in tup:
            if not 0 <= idx < cnf.m:
                return False, f"tuple {pos}: clause index {idx} out of range"
            use[idx] = use.get(idx, 0) + 1
        if not is_inconsistent_tuple(cnf, tup):
            return False, f"tuple {pos} is not an inconsistent even tuple"
    for idx, cnt in use.items():
        if cnt > coll.d:
            return False, f"clause {idx} used {cnt} times, bound is d={coll.d}"
    return True, None


# ------------------------------------------------------------------ search


def _occurrence_mask(cnf: Cnf, index: int) -> int:
    return parity_vector(cnf, index) >> 1


def _neg_parity(cnf: Cnf, index: int) -> int:
    return parity_vector(cnf, index) & 1


def _pair_candidates(cnf: Cnf) -> list[ClauseTuple]:
    """All inconsistent 2-tuples: same variable triple, odd negation sum."""
    by_triple: dict[int, list[int]] = {}
    for idx in range(cnf.m):
        by_triple.setdefault(_occurrence_mask(cnf, idx), []).append(idx)
    out: list[ClauseTuple] = []
    for members in by_triple.values():
        odd = [i for i in members if _neg_parity(cnf, i)]
        even = [i for i in members if not _neg_parity(cnf, i)]
        for i in odd:
            for j in even:
                out.append((i, j) if i < j else (j, i))
    return out


def _quad_candidates(cnf: Cnf, budget: int) -> list[ClauseTuple]:
    """4-subsets from occurrence-XOR collisions between clause pairs."""
    if cnf.m * (cnf.m - 1) // 2 > budget:
        return []
    by_xor: dict[int, list[tuple[int, int]]] = {}
    masks = [_occurrence_mask(cnf, i) for i in range(cnf.m)]
    for i in range(cnf.m):
        for j in range(i + 1, cnf.m):
            x = masks[i] ^ masks[j]
            if x:  # xor 0 is the pair case, handled separately
                by_xor.setdefault(x, []).append((i, j))
    out: set[ClauseTuple] = set()
    for pairs in by_xor.values():
        if len(pairs) < 2:
            continue
        for a in range(len(pairs)):
            for b in range(a + 1, len(pairs)):
                quad = set(pairs[a]) | set(pairs[b])
                if len(quad) != 4:
                    continue
                tup = tuple(sorted(quad))
                parity = 0
                for idx in tup:
                    parity ^= _neg_parity(cnf, idx)
                if parity:
                    out.add(tup)
                if len(out) >= budget:
                    return sorted(out)
    return sorted(out)


def _elimination_candidates(
    cnf: Cnf, k_max: int, seed: int, budget: int, rounds: int = 8
) -> list[ClauseTuple]:
    """Seeded GF(2) elimination rounds over clause parity vectors.

    Tracks, for each reduced row, which original clauses sum into it; a
    row reducing to zero exposes a kernel element whose support is an
    even tuple.  Different insertion orders expose different supports.
    """
    import random

    out: set[ClauseTuple] = set()
    masks = [_occurrence_mask(cnf, i) for i in range(cnf.m)]
    examined = 0
    for r in range(rounds):
        order = list(range(cnf.m))
        random.Random(seed * 1000003 + r).shuffle(order)
        basis: dict[int, tuple[int, int]] = {}  # leading bit -> (vec, support)
        for idx in order:
            vec = masks[idx]
            sup = 1 << idx
            while vec:
                lead = vec.bit_length() - 1
                if lead not in basis:
                    basis[lead] = (vec, sup)
                    break
                bv, bs = basis[lead]
                vec ^= bv
                sup ^= bs
            else:
                examined += 1
                size = bin(sup).count("1")
                if 2 <= size <= k_max:
                    members = [i for i in range(cnf.m) if sup >> i & 1]
                    parity = 0
                    for i in members:
                        parity ^= _neg_parity(cnf, i)
                    if parity:
                        out.add(tuple(members))
            if examined >= budget:
                return sorted(out)
    return sorted(out)


def _greedy_pack(
    candidates: Iterable[ClauseTuple], k: int, d: int
) -> tuple[ClauseTuple, ...]:
    chosen: list[ClauseTuple] = []
    use: dict[int, int] = {}
    for tup in candidates:
        if len(tup) != k:
            continue
        if all(use.get(i, 0) + 1 <= d for i in tup):
            chosen.append(tup)
            for i in tup:
                use[i] = use.get(i, 0) + 1
    return tuple(chosen)


def find_collection(
    cnf: Cnf,
    k_max: int = 4,
    d: int = 4,
    t_target: int = 1,
    seed: int = 0,
    budget: int = 50_000,
) -> TupleCollection:
    """Search for a (t, k, d)-collection with t >= t_target and k <= k_max.

    Deterministic given the seed.  Candidates come from exhaustive pair
    enumeration, pair-XOR collisions (4-subsets), and seeded elimination
    rounds; one greedy packing pass runs per even k, and the k with the
    largest packed t wins (ties prefer smaller k).  Raises
    CollectionSearchError (carrying the best collection) when the budget
    is exhausted below t_target.
    """
    if k_max < 2 or k_max % 2:
        raise ValueError("k_max must be even and at least 2")
    if d < 1:
        raise ValueError("d must be at least 1")
    candidates: set[ClauseTuple] = set(_pair_candidates(cnf))
    if k_max >= 4:
        candidates.update(_quad_candidates(cnf, budget))
        candidates.update(_elimination_candidates(cnf, k_max, seed, budget))
    ordered = sorted(candidates, key=lambda t: (len(t), t))
    best: TupleCollection | None = None
    for k in range(2, k_max + 1, 2):
        packed = _greedy_pack(ordered, k, d)
        coll = TupleCollection(packed, len(packed), k, d)
        if best is None or coll.t > best.t:
            best = coll
    assert best is not None
    if best.t < t_target:
        raise CollectionSearchError(best, t_target)
    return best
