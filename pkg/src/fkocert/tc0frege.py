"""Sequent calculus with threshold connectives, plus a proof checker.

Formulas are built from constants T/F, variables p_i, negation, and
threshold connectives Th_i(A_1,...,A_n), true when at least i children
are true; boundary semantics make Th_0(...) true and Th_i(...) with
i > n false.  Sequents are ordered pairs of formula sequences; position
bookkeeping is explicit (exchange/contraction are rules, not conventions),
so every inference has to match its rule shape exactly.

`check_proof` validates a proof line by line; `decide_constant_formula`
produces, for any variable-free formula, a checkable proof of it or of
its negation; `substitute` maps variables to constants throughout a
proof, which preserves validity (all rule matchers only test structural
equalities, and substitution is a congruence for those).

Proof text format (one step per line, 1-based ids):

    1: axiom |- p1 --> p1
    2: not-right(1) |-  --> ~p1, p1
    3: exchange-right(2) |-  --> p1, ~p1
    4: one-right(3) |-  --> Th1(p1, ~p1)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

__all__ = [
    "TcFormula",
    "Top",
    "Bot",
    "Var",
    "Not",
    "Th",
    "TOP",
    "BOT",
    "Sequent",
    "ProofStep",
    "TcProof",
    "CheckResult",
    "RULES",
    "free_vars",
    "eval_formula",
    "eval_sequent",
    "check_proof",
    "substitute_formula",
    "substitute",
    "decide_constant_formula",
    "parse_formula",
    "format_formula",
    "parse_sequent",
    "format_sequent",
    "parse_proof",
    "format_proof",
]


@dataclass(frozen=True)
class Top:
    def __repr__(self) -> str:
        return "T"


@dataclass(frozen=True)
class Bot:
    def __repr__(self) -> str:
        return "F"


@dataclass(frozen=True)
class Var:
    index: int

    def __repr__(self) -> str:
        return f"p{self.index}"


@dataclass(frozen=True)
class Not:
    child: "TcFormula"

    def __repr__(self) -> str:
        return f"~{self.child!r}"


@dataclass(frozen=True)
class Th:
    i: int
    children: tuple["TcFormula", ...]

    def __post_init__(self) -> None:
        if self.i < 0:
            raise ValueError("threshold index must be nonnegative")

    def __repr__(self) -> str:
        return f"Th{self.i}({', '.join(map(repr, self.children))})"


TcFormula = Top | Bot | Var | Not | Th
TOP = Top()
BOT = Bot()


def free_vars(f: TcFormula) -> set[int]:
    if isinstance(f, Var):
        return {f.index}
    if isinstance(f, Not):
        return free_vars(f.child)
    if isinstance(f, Th):
        out: set[int] = set()
        for ch in f.children:
            out |= free_vars(ch)
        return out
    return set()


def eval_formula(f: TcFormula, assignment: Mapping[int, bool]) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Var):
        if f.index not in assignment:
            raise ValueError(f"unbound variable p{f.index}")
        return bool(assignment[f.index])
    if isinstance(f, Not):
        return not eval_formula(f.child, assignment)
    if isinstance(f, Th):
        need = f.i
        if need == 0:
            return True
        true_so_far = 0
        for ch in f.children:
            if eval_formula(ch, assignment):
                true_so_far += 1
                if true_so_far >= need:
                    return True
        return False
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class Sequent:
    ante: tuple[TcFormula, ...]
    succ: tuple[TcFormula, ...]

    def __repr__(self) -> str:
        return format_sequent(self)


def eval_sequent(seq: Sequent, assignment: Mapping[int, bool]) -> bool:
    """Conjunction of the antecedent implies disjunction of the succedent."""
    if not all(eval_formula(a, assignment) for a in seq.ante):
        return True
    return any(eval_formula(s, assignment) for s in seq.succ)


@dataclass(frozen=True)
class ProofStep:
    seq: Sequent
    rule: str
    premises: tuple[int, ...] = ()


@dataclass(frozen=True)
class TcProof:
    steps: tuple[ProofStep, ...]

    @property
    def final(self) -> Sequent:
        return self.steps[-1].seq


@dataclass(frozen=True)
class CheckResult:
    valid: bool
    step: int | None = None
    message: str | None = None

    def __bool__(self) -> bool:
        return self.valid


# ------------------------------------------------------------ rule matching


def _is_axiom(s: Sequent) -> str | None:
    if len(s.ante) == 1 and s.ante == s.succ:
        return None
    if s.ante == (BOT,) and not s.succ:
        return None
    if not s.ante and s.succ == (TOP,):
        return None
    # boundary shapes: Th_0(...) is T, Th_i(...) with i > n is F
    if not s.ante and len(s.succ) == 1:
        f = s.succ[0]
        if isinstance(f, Th) and f.i == 0:
            return None
    if not s.succ and len(s.ante) == 1:
        f = s.ante[0]
        if isinstance(f, Th) and f.i > len(f.children):
            return None
    return "not an axiom sequent"


def _match_weaken_left(ps: Sequence[Sequent], s: Sequent) -> str | None:
    (p,) = ps
    if s.succ != p.succ:
        return "succedent changed"
    if len(s.ante) != len(p.ante) + 1 or s.ante[:-1] != p.ante:
        return "antecedent is not the premise's plus one formula at the end"
    return None


def _match_weaken_right(ps: Sequence[Sequent], s: Sequent) -> str | None:
    (p,) = ps
    if s.ante != p.ante:
        return "antecedent changed"
    if len(s.succ) != len(p.succ) + 1 or s.succ[1:] != p.succ:
        return "succedent is not one formula plus the premise's"
    return None


def _swapped(seq: tuple, i: int) -> tuple:
    return seq[:i] + (seq[i + 1], seq[i]) + seq[i + 2:]


def _match_exchange_left(ps: Sequence[Sequent], s: Sequent) -> str | None:
    (p,) = ps
    if s.succ != p.succ:
        return "succedent changed"
    if len(s.ante) != len(p.ante):
        return "antecedent length changed"
    if any(_swapped(p.ante, i) == s.ante for i in range(len(p.ante) - 1)):
        return None
    return "not an adjacent transposition of the premise antecedent"


def _match_exchange_right(ps: Sequence[Sequent], s: Sequent) -> str | None:
    (p,) = ps
    if s.ante != p.ante:
        return "antecedent changed"
    if len(s.succ) != len(p.succ):
        return "succedent length changed"
    if any(_swapped(p.succ, i) == s.succ for i in range(len(p.succ) - 1)):
        return None
    return "not an adjacent transposition of the premise succedent"


def _match_contract_left(ps: Sequence[Sequent], s: Sequent) -> str | None:
    (p,) = ps
    if s.succ != p.succ:
        return "succedent changed"
    if not s.ante or p.ante != s.ante + (s.ante[-1],):
        return "premise antecedent must end with the duplicated formula"
    return None


def _match_contract_right(ps: Sequence[Sequent], s: Sequent) -> str | None:
    (p,) = ps
    if s.ante != p.ante:
        return "antecedent changed"
    if not s.succ or p.succ != (s.succ[0],) + s.succ:
        return "premise succedent must start with the duplicated formula"
    return None


def _match_not_left(ps: Sequence[Sequent], s: Sequent) -> str | None:
    (p,) = ps
    if not s.ante or not isinstance(s.ante[-1], Not):
        return "conclusion antecedent must end with a negation"
    a = s.ante[-1].child
    if p.ante != s.ante[:-1]:
        return "premise antecedent mismatch"
    if p.succ != (a,) + s.succ:
        return "premise succedent must start with the negated formula"
    return None


def _match_not_right(ps: Sequence[Sequent], s: Sequent) -> str | None:
    (p,) = ps
    if not s.succ or not isinstance(s.succ[0], Not):
        return "conclusion succedent must start with a negation"
    a = s.succ[0].child
    if p.succ != s.succ[1:]:
        return "premise succedent mismatch"
    if p.ante != s.ante + (a,):
        return "premise antecedent must end with the negated formula"
    return None


def _th_head(seq: tuple[TcFormula, ...], want_i=None) -> Th | None:
    if seq and isinstance(seq[0], Th):
        f = seq[0]
        if want_i is None or f.i == want_i:
            return f
    return None


def _match_all_left(ps: Sequence[Sequent], s: Sequent) -> str | None:
    f = _th_head(s.ante)
    if f is None or f.i != len(f.children):
        return "conclusion antecedent must start with Th_n over n children"
    (p,) = ps
    if p.succ != s.succ:
        return "succedent changed"
    if p.ante != f.children + s.ante[1:]:
        return "premise antecedent must list all children then the context"
    return None


def _match_all_right(ps: Sequence[Sequent], s: Sequent) -> str | None:
    f = _th_head(s.succ)
    if f is None or f.i != len(f.children):
        return "conclusion succedent must start with Th_n over n children"
    if len(ps) != len(f.children):
        return f"need {len(f.children)} premises, got {len(ps)}"
    for j, p in enumerate(ps):
        if p.ante != s.ante:
            return f"premise {j}: antecedent changed"
        if p.succ != (f.children[j],) + s.succ[1:]:
            return f"premise {j}: succedent must start with child {j}"
    return None


def _match_one_left(ps: Sequence[Sequent], s: Sequent) -> str | None:
    f = _th_head(s.ante, want_i=1)
    if f is None:
        return "conclusion antecedent must start with Th_1"
    if len(ps) != len(f.children):
        return f"need {len(f.children)} premises, got {len(ps)}"
    for j, p in enumerate(ps):
        if p.succ != s.succ:
            return f"premise {j}: succedent changed"
        if p.ante != (f.children[j],) + s.ante[1:]:
            return f"premise {j}: antecedent must start with child {j}"
    return None


def _match_one_right(ps: Sequence[Sequent], s: Sequent) -> str | None:
    f = _th_head(s.succ, want_i=1)
    if f is None:
        return "conclusion succedent must start with Th_1"
    (p,) = ps
    if p.ante != s.ante:
        return "antecedent changed"
    if p.succ != f.children + s.succ[1:]:
        return "premise succedent must list all children then the context"
    return None


def _match_th_left(ps: Sequence[Sequent], s: Sequent) -> str | None:
    f = _th_head(s.ante)
    if f is None or f.i < 1 or not f.children:
        return "conclusion antecedent must start with Th_i, i >= 1, n >= 1"
    p1, p2 = ps
    tail = f.children[1:]
    if p1.succ != s.succ or p2.succ != s.succ:
        return "succedent changed"
    if p1.ante != (Th(f.i, tail),) + s.ante[1:]:
        return "first premise must drop the head child"
    if p2.ante != (Th(f.i - 1, tail), f.children[0]) + s.ante[1:]:
        return "second premise must lower the threshold and expose the head"
    return None


def _match_th_right(ps: Sequence[Sequent], s: Sequent) -> str | None:
    f = _th_head(s.succ)
    if f is None or f.i < 1 or not f.children:
        return "conclusion succedent must start with Th_i, i >= 1, n >= 1"
    p1, p2 = ps
    tail = f.children[1:]
    if p1.ante != s.ante or p2.ante != s.ante:
        return "antecedent changed"
    if p1.succ != (Th(f.i, tail), f.children[0]) + s.succ[1:]:
        return "first premise must drop the head child and expose it"
    if p2.succ != (Th(f.i - 1, tail),) + s.succ[1:]:
        return "second premise must lower the threshold"
    return None


def _match_cut(ps: Sequence[Sequent], s: Sequent) -> str | None:
    p1, p2 = ps
    if not p1.succ:
        return "first premise succedent is empty"
    a = p1.succ[0]
    if p1.ante != s.ante or p1.succ != (a,) + s.succ:
        return "first premise must be the conclusion with the cut formula in front"
    if p2.ante != s.ante + (a,) or p2.succ != s.succ:
        return "second premise must be the conclusion with the cut formula at the end"
    return None


RULES: dict[str, tuple[int | None, Callable]] = {
    "weaken-left": (1, _match_weaken_left),
    "weaken-right": (1, _match_weaken_right),
    "exchange-left": (1, _match_exchange_left),
    "exchange-right": (1, _match_exchange_right),
    "contract-left": (1, _match_contract_left),
    "contract-right": (1, _match_contract_right),
    "not-left": (1, _match_not_left),
    "not-right": (1, _match_not_right),
    "all-left": (1, _match_all_left),
    "all-right": (None, _match_all_right),  # premise count depends on n
    "one-left": (None, _match_one_left),
    "one-right": (1, _match_one_right),
    "th-left": (2, _match_th_left),
    "th-right": (2, _match_th_right),
    "cut": (2, _match_cut),
}


def check_proof(proof: TcProof) -> CheckResult:
    """Validate every step: axiom shape or exact rule match on premises
    that strictly precede it."""
    for idx, step in enumerate(proof.steps):
        if step.rule == "axiom":
            if step.premises:
                return CheckResult(False, idx, f"step {idx + 1}: axiom with premises")
            why = _is_axiom(step.seq)
            if why:
                return CheckResult(False, idx, f"step {idx + 1}: {why}")
            continue
        if step.rule not in RULES:
            return CheckResult(False, idx, f"step {idx + 1}: unknown rule {step.rule!r}")
        arity, matcher = RULES[step.rule]
        if any(not 0 <= p < idx for p in step.premises):
            return CheckResult(
                False, idx, f"step {idx + 1}: premise does not precede the step"
            )
        if arity is not None and len(step.premises) != arity:
            return CheckResult(
                False,
                idx,
                f"step {idx + 1}: {step.rule} takes {arity} premise(s), "
                f"got {len(step.premises)}",
            )
        prem_seqs = [proof.steps[p].seq for p in step.premises]
        why = matcher(prem_seqs, step.seq)
        if why:
            return CheckResult(False, idx, f"step {idx + 1}: {step.rule}: {why}")
    if not proof.steps:
        return CheckResult(False, None, "empty proof")
    return CheckResult(True)


# ------------------------------------------------------------- substitution


def substitute_formula(
    f: TcFormula, mapping: Mapping[int, bool]
) -> TcFormula:
    if isinstance(f, Var):
        if f.index in mapping:
            return TOP if mapping[f.index] else BOT
        return f
    if isinstance(f, Not):
        return Not(substitute_formula(f.child, mapping))
    if isinstance(f, Th):
        return Th(f.i, tuple(substitute_formula(ch, mapping) for ch in f.children))
    return f


def substitute(proof: TcProof, mapping: Mapping[int, bool]) -> TcProof:
    """Replace variables by constants everywhere; validity is preserved
    and the proof does not grow."""

    def sub_seq(seq: Sequent) -> Sequent:
        return Sequent(
            tuple(substitute_formula(a, mapping) for a in seq.ante),
            tuple(substitute_formula(s, mapping) for s in seq.succ),
        )

    return TcProof(
        tuple(
            ProofStep(sub_seq(st.seq), st.rule, st.premises) for st in proof.steps
        )
    )


# ------------------------------------------------- deciding constant formulas


class _Emitter:
    def __init__(self) -> None:
        self.steps: list[ProofStep] = []
        self._memo: dict[tuple[bool, TcFormula], int] = {}

    def add(self, ante, succ, rule, *premises: int) -> int:
        self.steps.append(ProofStep(Sequent(tuple(ante), tuple(succ)), rule, premises))
        return len(self.steps) - 1

    def prove_true(self, f: TcFormula) -> int:
        """Emit a proof of --> f for a true constant formula."""
        key = (True, f)
        if key in self._memo:
            return self._memo[key]
        if isinstance(f, Top):
            idx = self.add((), (TOP,), "axiom")
        elif isinstance(f, Not):
            below = self.prove_false(f.child)
            idx = self.add((), (f,), "not-right", below)
        elif isinstance(f, Th):
            if f.i == 0:
                idx = self.add((), (f,), "axiom")
            else:
                head, tail = f.children[0], f.children[1:]
                drop = Th(f.i, tail)
                lower = Th(f.i - 1, tail)
                p2 = self.prove_true(lower)
                if eval_formula(head, {}):
                    h = self.prove_true(head)
                    p1 = self.add((), (drop, head), "weaken-right", h)
                else:
                    t = self.prove_true(drop)
                    w = self.add((), (head, drop), "weaken-right", t)
                    p1 = self.add((), (drop, head), "exchange-right", w)
                idx = self.add((), (f,), "th-right", p1, p2)
        else:
            raise ValueError(f"cannot prove {f!r} true")
        self._memo[key] = idx
        return idx

    def prove_false(self, f: TcFormula) -> int:
        """Emit a proof of f --> for a false constant formula."""
        key = (False, f)
        if key in self._memo:
            return self._memo[key]
        if isinstance(f, Bot):
            idx = self.add((BOT,), (), "axiom")
        elif isinstance(f, Not):
            below = self.prove_true(f.child)
            idx = self.add((f,), (), "not-left", below)
        elif isinstance(f, Th):
            if f.i > len(f.children):
                idx = self.add((f,), (), "axiom")
            else:
                head, tail = f.children[0], f.children[1:]
                drop = Th(f.i, tail)
                lower = Th(f.i - 1, tail)
                q1 = self.prove_false(drop)
                if not eval_formula(head, {}):
                    h = self.prove_false(head)
                    w = self.add((head, lower), (), "weaken-left", h)
                    q2 = self.add((lower, head), (), "exchange-left", w)
                else:
                    t = self.prove_false(lower)
                    q2 = self.add((lower, head), (), "weaken-left", t)
                idx = self.add((f,), (), "th-left", q1, q2)
        else:
            raise ValueError(f"cannot prove {f!r} false")
        self._memo[key] = idx
        return idx


def decide_constant_formula(f: TcFormula) -> TcProof:
    """For a variable-free formula, a checkable proof of --> f when f is
    true, of --> ~f when false."""
    if free_vars(f):
        raise ValueError(f"formula has free variables: {sorted(free_vars(f))}")
    em = _Emitter()
    if eval_formula(f, {}):
        em.prove_true(f)
    else:
        below = em.prove_false(f)
        em.add((), (Not(f),), "not-right", below)
    return TcProof(tuple(em.steps))


# ---------------------------------------------------------------- text form


_TOKEN = re.compile(r"\s*(Th\d+|p\d+|T|F|~|\(|\)|,)")


class _FormulaParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def _next(self, peek: bool = False) -> str | None:
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            return None
        if not peek:
            self.pos = m.end()
        return m.group(1)

    def parse(self) -> TcFormula:
        tok = self._next()
        if tok is None:
            raise ValueError(f"expected formula at {self.text[self.pos:]!r}")
        if tok == "T":
            return TOP
        if tok == "F":
            return BOT
        if tok == "~":
            return Not(self.parse())
        if tok.startswith("p"):
            return Var(int(tok[1:]))
        if tok.startswith("Th"):
            i = int(tok[2:])
            if self._next() != "(":
                raise ValueError("expected '(' after threshold")
            children: list[TcFormula] = []
            if self._next(peek=True) == ")":
                self._next()
                return Th(i, ())
            while True:
                children.append(self.parse())
                sep = self._next()
                if sep == ")":
                    return Th(i, tuple(children))
                if sep != ",":
                    raise ValueError(f"expected ',' or ')' in threshold, got {sep!r}")
        raise ValueError(f"unexpected token {tok!r}")

    def done(self) -> bool:
        return self.pos >= len(self.text) or self.text[self.pos:].strip() == ""


def parse_formula(text: str) -> TcFormula:
    p = _FormulaParser(text)
    f = p.parse()
    if not p.done():
        raise ValueError(f"trailing input after formula: {text[p.pos:]!r}")
    return f


def format_formula(f: TcFormula) -> str:
    return repr(f)


def _split_formulas(text: str) -> tuple[TcFormula, ...]:
    text = text.strip()
    if not text:
        return ()
    out: list[TcFormula] = []
    p = _FormulaParser(text)
    while True:
        out.append(p.parse())
        rest = text[p.pos:].strip()
        if not rest:
            return tuple(out)
        if not rest.startswith(","):
            raise ValueError(f"expected ',' between formulas, got {rest!r}")
        p.pos = text.index(",", p.pos) + 1


def parse_sequent(text: str) -> Sequent:
    if "-->" not in text:
        raise ValueError(f"sequent needs '-->': {text!r}")
    left, right = text.split("-->", 1)
    return Sequent(_split_formulas(left), _split_formulas(right))


def format_sequent(seq: Sequent) -> str:
    left = ", ".join(map(format_formula, seq.ante))
    right = ", ".join(map(format_formula, seq.succ))
    return f"{left} --> {right}".strip()


_STEP = re.compile(
    r"^\s*(\d+)\s*:\s*([a-z-]+)\s*(?:\(([\d\s,]*)\))?\s*\|-\s*(.*)$"
)


def parse_proof(text: str) -> TcProof:
    """Parse the line format; ids must be 1..N in order, premises refer
    to earlier ids."""
    steps: list[ProofStep] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _STEP.match(line)
        if not m:
            raise ValueError(f"malformed proof line: {line!r}")
        sid, rule, prems, seq_text = m.groups()
        if int(sid) != len(steps) + 1:
            raise ValueError(f"step ids must be sequential, got {sid}")
        premises = tuple(
            int(tok) - 1 for tok in (prems or "").replace(",", " ").split()
        )
        steps.append(ProofStep(parse_sequent(seq_text), rule, premises))
    if not steps:
        raise ValueError("empty proof text")
    return TcProof(tuple(steps))


def format_proof(proof: TcProof) -> str:
    lines = []
    for idx, st in enumerate(proof.steps, start=1):
        prem = (
            "(" + ", ".join(str(p + 1) for p in st.premises) + ")"
            if st.premises
            else ("" if st.rule == "axiom" else "()")
        )
        lines.append(f"{idx}: {st.rule}{prem} |- {format_sequent(st.seq)}")
    return "\n".join(lines) + "\n"
