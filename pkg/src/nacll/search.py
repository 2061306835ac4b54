"""Backward cut-free proof search for both calculi.

The engine first tries to saturate: it explores every state reachable
backwards from the goal (a state is a sequent plus the number of
contractions still allowed), then solves the resulting AND-OR graph for the
least proofs.  If the whole graph fits under ``max_visited`` the verdict is
exact for the contraction bound, so a missing proof is reported as
:class:`Exhausted`.  Otherwise a depth-bounded search with failure memo takes
over and can only answer :class:`Proved` or :class:`BudgetExceeded`.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Union

from . import classical as C
from . import intuitionistic as I
from .equivalence import canonicalize, equivalent
from .proof import Proof, Violation
from .signature import Signature
from .syntax import (BOT, EMPTY, LITERALS, ONE, TOP, ZERO, Bang, ImplL, ImplR, ISequent, Pair,
                     Par, Plus, Quest, Sequent, Structure, Tensor, With, at, leaves, negate, nodes,
                     replace)


@dataclass(frozen=True)
class Budget:
    max_depth: int = 14
    max_contractions: int = 2
    max_visited: int = 200_000

    def __post_init__(self):
        if self.max_depth < 1 or self.max_contractions < 0 or self.max_visited < 1:
            raise ValueError(f"invalid budget {self}")


@dataclass(frozen=True)
class Proved:
    proof: Proof
    visited: int = 0

    def __str__(self) -> str:
        return f"Proved: cut-free proof of height {self.proof.height}"


@dataclass(frozen=True)
class Exhausted:
    contractions: int
    visited: int = 0

    def __str__(self) -> str:
        return f"Exhausted: no proof with at most {self.contractions} contraction(s) per branch"


@dataclass(frozen=True)
class BudgetExceeded:
    visited: int = 0

    def __str__(self) -> str:
        return "BudgetExceeded: no proof found within the budget"


SearchOutcome = Union[Proved, Exhausted, BudgetExceeded]


@dataclass(frozen=True)
class _Step:
    rule: str
    at: tuple[str, ...]
    label: str | None
    premises: tuple[Hashable, ...]


class _TooLarge(Exception):
    pass


def _saturate(root, expand: Callable[[Hashable], list[_Step]], cap: int):
    """Least proof heights over the reachable state graph, or ``_TooLarge``."""
    steps: dict = {}
    frontier = [root]
    steps[root] = None
    while frontier:
        state = frontier.pop()
        found = expand(state)
        steps[state] = found
        for st in found:
            for p in st.premises:
                if p not in steps:
                    if len(steps) >= cap:
                        raise _TooLarge
                    steps[p] = None
                    frontier.append(p)
    users: dict = {}
    pending = []
    heap = []
    order = 0
    for state, found in steps.items():
        for st in found:
            distinct = set(st.premises)
            pending.append(len(distinct))
            idx = len(pending) - 1
            for p in distinct:
                users.setdefault(p, []).append((state, st, idx))
            if not distinct:
                heapq.heappush(heap, (1, order, state, st))
                order += 1
    best: dict = {}
    while heap:
        h, _, state, st = heapq.heappop(heap)
        if state in best:
            continue
        best[state] = (h, st)
        for parent, pst, idx in users.get(state, ()):
            pending[idx] -= 1
            if pending[idx] == 0 and parent not in best:
                ph = 1 + max(best[p][0] for p in pst.premises)
                heapq.heappush(heap, (ph, order, parent, pst))
                order += 1
    return best, len(steps)


def _bounded(root, expand, depth: int, cap: int):
    """Depth-first search with a failure memo; returns (best map or None, visited)."""
    failed: dict = {}
    best: dict = {}
    visited = 0

    def go(state, d) -> bool:
        nonlocal visited
        if state in best:
            return best[state][0] <= d
        if failed.get(state, -1) >= d or d == 0:
            return False
        visited += 1
        if visited > cap:
            raise _TooLarge
        for st in expand(state):
            if all(go(p, d - 1) for p in st.premises):
                if state in best:  # proved deeper down a cycle; keep that proof
                    return best[state][0] <= d
                h = 1 + max((best[p][0] for p in st.premises), default=0)
                best[state] = (h, st)
                return True
        failed[state] = max(failed.get(state, -1), d)
        return False

    try:
        ok = go(root, depth)
    except _TooLarge:
        ok = False
    return (best if ok else None), visited


def _run(root, expand, build, budget: Budget) -> SearchOutcome:
    try:
        best, visited = _saturate(root, expand, budget.max_visited)
    except _TooLarge:
        best, visited = _bounded(root, expand, budget.max_depth, budget.max_visited)
        if best is None:
            return BudgetExceeded(visited)
        return Proved(build(root, best), visited)
    if root not in best:
        return Exhausted(budget.max_contractions, visited)
    return Proved(build(root, best), visited)


def _build(root, best, node: Callable) -> Proof:
    cache: dict = {}

    def go(state):
        if state not in cache:
            _, st = best[state]
            cache[state] = node(state, st, [go(p) for p in st.premises])
        return cache[state]

    return go(root)


# -- classical ----------------------------------------------------------------

def _insertions(s: Structure, p: str, f) -> Iterable[tuple[Structure, str, str]]:
    """Place a copy of the leaf ``f`` (at ``p``) next to every node of ``s``.

    Yields the new structure with the paths of the original and the copy.
    """
    for q, sub in nodes(s):
        for copy_left in (True, False):
            new = replace(s, q, Pair(f, sub) if copy_left else Pair(sub, f))
            inner, copy = (q + "R", q + "L") if copy_left else (q + "L", q + "R")
            orig = inner + p[len(q):] if p.startswith(q) else p
            yield new, orig, copy


def _classical_expander(sig: Signature, canon: bool):
    key = canonicalize if canon else (lambda s: s)

    def expand(state) -> list[_Step]:
        s, k = state
        out: list[_Step] = []

        def add(rule, paths, label, *premises, dk=0):
            out.append(_Step(rule, tuple(paths), label, tuple((key(p), k - dk) for p in premises)))

        if (isinstance(s, Pair) and isinstance(s.left, LITERALS) and isinstance(s.right, LITERALS)
                and s.right == negate(s.left)):
            add("Init", (), None)
        if s == ONE:
            add("OneAx", (), None)
        ls = list(leaves(s))
        for p, f in ls:
            if f == TOP:
                add("TopAx", (p,), None)
        # invertible hole rules first
        for p, f in ls:
            if isinstance(f, Par):
                add("Par", (p,), None, replace(s, p, Pair(f.left, f.right)))
            elif isinstance(f, With):
                add("With", (p,), None, replace(s, p, f.left), replace(s, p, f.right))
            elif f == BOT and s != BOT:
                add("BotIntro", (p,), None, replace(s, p, EMPTY))
        for p, f in ls:
            if isinstance(f, Plus):
                add("PlusL", (p,), None, replace(s, p, f.left))
                add("PlusR", (p,), None, replace(s, p, f.right))
            elif isinstance(f, Quest):
                add("Der", (p,), f.label, replace(s, p, f.body))
        for p, f in ls:
            if isinstance(f, (Tensor, Bang)):
                rule = "Tensor" if isinstance(f, Tensor) else "Prom"
                try:
                    for prem in C.premise_candidates(rule, s, (p,), getattr(f, "label", None),
                                                     None, sig, C.MODULO):
                        add(rule, (p,), getattr(f, "label", None), *prem)
                except Violation:
                    pass
        for q, sub in nodes(s):
            if not q or not all(isinstance(g, Quest) for _, g in leaves(sub)):
                continue
            for rule in ("QE", "QA1", "QA2"):
                try:
                    for (prem,) in C.premise_candidates(rule, s, (q,), None, None, sig, C.MODULO):
                        add(rule, (q,), None, prem)
                except Violation:
                    pass
        for p, f in ls:
            if isinstance(f, Quest) and sig.has(f.label, "W") and s != f:
                add("QW", (p,), None, replace(s, p, EMPTY))
        if k > 0:
            for p, f in ls:
                if isinstance(f, Quest) and sig.has(f.label, "C"):
                    for new, orig, copy in _insertions(s, p, f):
                        add("QC", (p,), None, new, dk=1)
        return out

    return expand, key


def _qc_paths(concl: Structure, premise: Structure, p: str) -> tuple[str, ...]:
    f = at(concl, p)
    cands = [q for q, g in leaves(premise) if g == f]
    for i, a in enumerate(cands):
        for b in cands[i + 1:]:
            paths = (p, a, b)
            if any(equivalent(x, concl) for x in C.contraction_candidates(concl, premise, paths)):
                return paths
    raise AssertionError("contraction copies not found")


def prove_classical(seq: Sequent, sig: Signature = Signature(), budget: Budget = Budget(),
                    canon: bool = True) -> SearchOutcome:
    """Cut-free search in modulo mode; ``canon=False`` keys states literally."""
    expand, _ = _classical_expander(sig, canon)
    root = (seq.structure, budget.max_contractions)

    def node(state, st, premises):
        paths = st.at
        if st.rule == "QC":
            paths = _qc_paths(state[0], premises[0].conclusion.structure, st.at[0])
        return Proof(st.rule, Sequent(state[0]), paths, st.label, None, tuple(premises))

    outcome = _run(root, expand, lambda r, b: _build(r, b, node), budget)
    if isinstance(outcome, Proved):
        C.check_proof(outcome.proof, sig, C.MODULO)
    return outcome


# -- intuitionistic -------------------------------------------------------------

def _intuitionistic_expander(sig: Signature, system: I.ISystem):
    rules = system.rules
    assoc = [r for r in ("A1", "A2", *I.PLUS_ASSOC) if r in rules]
    if system.name == "ALL_PLUS":
        assoc = list(I.PLUS_ASSOC)

    def expand(state) -> list[_Step]:
        seq, k = state
        out: list[_Step] = []

        def add(rule, paths, label, *premises, dk=0):
            out.append(_Step(rule, tuple(paths), label, tuple((p, k - dk) for p in premises)))

        def attempt(rule, paths=(), label=None):
            try:
                cands = I.premise_candidates(rule, seq, paths, label, sig, system)
            except Violation:
                return
            for prem in cands:
                add(rule, paths, label, *prem)

        g, c = seq.antecedent, seq.succedent
        for rule in ("Id", "OneR", "TopR"):
            attempt(rule)
        ls = list(leaves(g))
        if system.zero:
            for p, f in ls:
                if f == ZERO:
                    attempt("ZeroL", (p,))
        for rule in ("ArrowR", "BackR", "WithR"):
            attempt(rule)
        for p, f in ls:
            if isinstance(f, Tensor):
                attempt("TensorL", (p,))
            elif f == ONE:
                attempt("OneL", (p,))
            elif isinstance(f, Plus):
                attempt("PlusL", (p,))
        for rule in ("TensorR", "PlusR1", "PlusR2", "BangR"):
            attempt(rule)
        for p, f in ls:
            if isinstance(f, With):
                attempt("WithL1", (p,))
                attempt("WithL2", (p,))
            elif isinstance(f, Bang):
                attempt("BangL", (p,), f.label)
            elif isinstance(f, ImplR):
                attempt("ArrowL", (p,))
                if p.endswith("R"):
                    attempt("ArrowL", (p[:-1],))
            elif isinstance(f, ImplL):
                attempt("BackL", (p,))
                if p.endswith("L"):
                    attempt("BackL", (p[:-1],))
        for q, sub in nodes(g):
            if isinstance(sub, Pair):
                attempt("BangE", (q,))
                for rule in assoc:
                    attempt(rule, (q,))
        for p, f in ls:
            if isinstance(f, Bang) and sig.has(f.label, "W"):
                attempt("BangW", (p,))
        if k > 0:
            for p, f in ls:
                if isinstance(f, Bang) and sig.has(f.label, "C"):
                    for new, orig, copy in _insertions(g, p, f):
                        paths = (p, orig, copy)
                        add("BangC", paths, None, ISequent(new, c), dk=1)
        return out

    return expand


def prove_intuitionistic(seq: ISequent, sig: Signature = Signature(), system: I.ISystem = I.ALL,
                         budget: Budget = Budget()) -> SearchOutcome:
    expand = _intuitionistic_expander(sig, system)
    root = (seq, budget.max_contractions)

    def node(state, st, premises):
        return Proof(st.rule, state[0], st.at, st.label, None, tuple(premises))

    outcome = _run(root, expand, lambda r, b: _build(r, b, node), budget)
    if isinstance(outcome, Proved):
        I.check_proof_i(outcome.proof, sig, system)
    return outcome
