"""Unsatisfiability witnesses: build, verify, serialize.

A witness for a 3CNF K bundles the imbalance I, a spectral certificate
(lambdas, V) for the clause-polarity matrix M, and a (t, k, d)-collection
of inconsistent even tuples.  Acceptance is the exact strict inequality

    t > d * (I + lambda * n + slack) / 2

with slack recomputed from the certificate in rational arithmetic.  Any
satisfying assignment would NAE-satisfy at most (lambda*n + slack + 3m)/4
clauses, hence leave at most (I + lambda*n + slack)/2 clauses with exactly
two true literals, yet the collection forces at least ceil(t/d) non-3XOR
clauses -- so acceptance certifies unsatisfiability.

The verifier trusts nothing: I and M are recomputed from K, the
certificate residuals are recomputed exactly, and the collection is
re-checked clause by clause.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .cnf import Cnf, imbalance
from .exactq import QMat, grid_denominator, rat, snap_up_to_grid
from .spectral import (
    CertificationError,
    SpectralCert,
    approx_eigen,
    build_m,
    certify_eigvalbound,
)
from .tuples import TupleCollection, check_collection, find_collection

__all__ = [
    "FkoWitness",
    "Verdict",
    "build_witness",
    "verify_witness",
    "nae_upper_bound",
    "two_lit_upper_bound",
    "unsat3xor_lower_bound",
    "witness_to_json",
    "witness_from_json",
]


@dataclass(frozen=True)
class FkoWitness:
    n: int
    m: int
    c: int
    imb: int
    mat: QMat | None
    cert: SpectralCert
    lam: Fraction
    coll: TupleCollection
    epsilon: Fraction

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


@dataclass(frozen=True)
class Verdict:
    """Outcome of verification: either the first failed conjunct (one of
    3CNF, Coll, Imb, Mat, EigValBound, lambda-max, inequality) or the
    certified quantities."""

    accepted: bool
    reason: str | None = None
    detail: str | None = None
    u: Fraction | None = None
    tuple_bound: int | None = None
    margin: Fraction | None = None

    def to_json(self) -> str:
        if self.accepted:
            payload = {
                "accepted": True,
                "certified": {
                    "U": _rat_out(self.u),
                    "unsat3xor_lower_bound": self.tuple_bound,
                    "margin": _rat_out(self.margin),
                },
            }
        else:
            payload = {
                "accepted": False,
                "reason": self.reason,
                "detail": self.detail,
            }
        return json.dumps(payload, sort_keys=True)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def build_witness(
    cnf: Cnf,
    c: int = 8,
    d: int = 4,
    k_max: int = 4,
    seed: int = 0,
    budget: int = 50_000,
) -> FkoWitness:
    """Construct a witness: certificate first, then a collection with
    t_target = ceil(d*(I+U)/2) + 1.

    Raises CertificationError when the snapped eigendata fails its own
    certification, CollectionSearchError when the tuple search cannot
    reach t_target within budget (carrying the best collection found).
    """
    imb = imbalance(cnf)
    mat = build_m(cnf)
    cert = approx_eigen(mat, c)
    report = certify_eigvalbound(mat, cert)
    if not report.passed:
        raise CertificationError(report)
    bound = cert.lambdas[0] * cnf.n + report.slack
    t_target = _ceil(Fraction(d) * (imb + bound) / 2) + 1
    coll = find_collection(cnf, k_max=k_max, d=d, t_target=t_target,
                           seed=seed, budget=budget)
    grid_unit = Fraction(1, grid_denominator(max(cnf.n, 1), c))
    epsilon = snap_up_to_grid(max(report.slack, grid_unit), max(cnf.n, 1), c)
    return FkoWitness(
        n=cnf.n,
        m=cnf.m,
        c=c,
        imb=imb,
        mat=mat,
        cert=cert,
        lam=cert.lambdas[0],
        coll=coll,
        epsilon=epsilon,
    )


def verify_witness(cnf: Cnf, wit: FkoWitness) -> Verdict:
    """Re-check every conjunct from scratch; accept only on the strict
    exact inequality t > d*(I + lambda*n + slack)/2."""
    # 3CNF: the formula is well-formed and the witness talks about it.
    if wit.n != cnf.n or wit.m != cnf.m:
        return Verdict(False, "3CNF",
                       f"witness is for n={wit.n}, m={wit.m}, "
                       f"formula has n={cnf.n}, m={cnf.m}")
    for k, cl in enumerate(cnf.clauses):
        if len(set(cl.vars)) != 3 or not (1 <= min(cl.vars) <= max(cl.vars) <= cnf.n):
            return Verdict(False, "3CNF", f"clause {k} malformed")

    ok, why = check_collection(cnf, wit.coll)
    if not ok:
        return Verdict(False, "Coll", why)

    imb = imbalance(cnf)
    if wit.imb != imb:
        return Verdict(False, "Imb",
                       f"witness declares I={wit.imb}, formula has I={imb}")

    mat = build_m(cnf)
    if wit.mat is not None:
        if len(wit.mat) != cnf.n or any(
            len(row) != cnf.n for row in wit.mat
        ) or any(
            wit.mat[i][j] != mat[i][j] for i in range(cnf.n) for j in range(cnf.n)
        ):
            return Verdict(False, "Mat", "witness matrix differs from rebuilt M")

    if wit.cert.n != cnf.n:
        return Verdict(False, "EigValBound",
                       f"certificate dimension {wit.cert.n} != n={cnf.n}")
    report = certify_eigvalbound(mat, wit.cert)
    if not report.passed:
        return Verdict(False, "EigValBound",
                       f"failed conditions: {report.failed_conditions()}; "
                       f"rho={report.rho}, tau={report.tau}")

    if wit.lam != max(wit.cert.lambdas):
        return Verdict(False, "lambda-max",
                       f"lambda={wit.lam} != max eigenvalue "
                       f"{max(wit.cert.lambdas)}")

    bound = wit.lam * cnf.n + report.slack
    rhs = Fraction(wit.coll.d) * (imb + bound) / 2
    if not wit.coll.t > rhs:
        return Verdict(False, "inequality",
                       f"t={wit.coll.t} <= d*(I+U)/2 = {rhs}")
    return Verdict(
        True,
        u=bound,
        tuple_bound=math.ceil(Fraction(wit.coll.t, wit.coll.d)) if wit.coll.d else 0,
        margin=wit.coll.t - rhs,
    )


def nae_upper_bound(cnf: Cnf, wit: FkoWitness) -> Fraction:
    """(lambda*n + 3m + slack)/4: no assignment NAE-satisfies more."""
    report = certify_eigvalbound(build_m(cnf), wit.cert)
    return (wit.lam * cnf.n + 3 * cnf.m + report.slack) / 4


def two_lit_upper_bound(cnf: Cnf, wit: FkoWitness) -> Fraction:
    """(I + lambda*n + slack)/2: cap on clauses with exactly two true
    literals under any assignment."""
    report = certify_eigvalbound(build_m(cnf), wit.cert)
    return (imbalance(cnf) + wit.lam * cnf.n + report.slack) / 2


def unsat3xor_lower_bound(wit: FkoWitness) -> int:
    """ceil(t/d): clauses left non-3XOR by any assignment."""
    if wit.coll.d == 0:
        return 0
    return math.ceil(Fraction(wit.coll.t, wit.coll.d))


# -------------------------------------------------------------------- JSON


def _rat_out(x: Fraction | None) -> dict[str, str] | None:
    if x is None:
        return None
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _rat_in(obj) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj["den"]))
    return rat(obj)


def witness_to_json(wit: FkoWitness) -> str:
    """Deterministic JSON; M is omitted (the verifier rebuilds it)."""
    payload = {
        "n": wit.n,
        "m": wit.m,
        "c": wit.c,
        "I": wit.imb,
        "lambda": _rat_out(wit.lam),
        "lambdas": [_rat_out(x) for x in wit.cert.lambdas],
        "V": [[_rat_out(x) for x in row] for row in wit.cert.v],
        "D": {
            "t": wit.coll.t,
            "k": wit.coll.k,
            "d": wit.coll.d,
            "tuples": [list(tup) for tup in wit.coll.tuples],
        },
        "epsilon": _rat_out(wit.epsilon),
        "K3": _k_out(wit.cert.k3),
        "K4": _k_out(wit.cert.k4),
        "K5": _k_out(wit.cert.k5),
    }
    return json.dumps(payload, sort_keys=True, indent=1)


def _k_out(x: Fraction):
    return int(x) if x.denominator == 1 else _rat_out(x)


def witness_from_json(text: str) -> FkoWitness:
    obj = json.loads(text)
    cert = SpectralCert(
        lambdas=tuple(_rat_in(x) for x in obj["lambdas"]),
        v=tuple(tuple(_rat_in(x) for x in row) for row in obj["V"]),
        c=int(obj["c"]),
        k3=_rat_in(obj.get("K3", 16)),
        k4=_rat_in(obj.get("K4", 16)),
        k5=_rat_in(obj.get("K5", 16)),
    )
    d = obj["D"]
    coll = TupleCollection(
        tuples=tuple(tuple(int(i) for i in tup) for tup in d["tuples"]),
        t=int(d["t"]),
        k=int(d["k"]),
        d=int(d["d"]),
    )
    return FkoWitness(
        n=int(obj["n"]),
        m=int(obj["m"]),
        c=int(obj["c"]),
        imb=int(obj["I"]),
        mat=None,
        cert=cert,
        lam=_rat_in(obj["lambda"]),
        coll=coll,
        epsilon=_rat_in(obj["epsilon"]),
    )
