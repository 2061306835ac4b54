"""Inference rules and proof checking for the one-sided classical system.

Rules are described backwards: given the conclusion and the recorded
positions, :func:`premise_candidates` lists the premise structures the rule
allows.  A step checks when the actual premises match one candidate, either
literally (``strict`` mode) or up to structural equivalence (``modulo``).

In ``strict`` mode every rule with a displayed top-level shape (Init, Tensor,
Cut, Prom, the ?-structural rules and E/A1/A2) must find that shape
literally, principal formula at the top-right.  In ``modulo`` mode the
principal occurrence is rotated there first and the explicit E/A1/A2 rules
are rejected, since the equivalence absorbs them.
"""
from __future__ import annotations

import dataclasses
from typing import Sequence

from .equivalence import A1, A2, E, designate, equivalent, rotate, rotation_steps, split_points
from .proof import Proof, Violation
from .signature import NotApplicable, Signature, licensed, upset_restrict
from .syntax import (BOT, EMPTY, LITERALS, ONE, TOP, Bang, Formula, InvalidPath, Pair, Par,
                     Plus, Quest, Sequent, Structure, Tensor, With, at, disjoint, leaves, negate,
                     nodes, pair,
                     replace, replace_many)

STRICT, MODULO = "strict", "modulo"

ARITY = {
    "Init": 0, "OneAx": 0, "TopAx": 0,
    "Tensor": 2, "Cut": 2, "With": 2,
    "Par": 1, "PlusL": 1, "PlusR": 1, "BotIntro": 1,
    "E": 1, "A1": 1, "A2": 1,
    "Prom": 1, "Der": 1, "QA1": 1, "QA2": 1, "QE": 1, "QW": 1, "QC": 1,
}
RULES = tuple(ARITY)
STRICT_ONLY = frozenset({"E", "A1", "A2"})
Q_AXIOM = {"QA1": "A1", "QA2": "A2", "QE": "E", "QW": "W", "QC": "C"}


def _need_path(rule: str, paths: Sequence[str], n: int = 1) -> list[str]:
    if len(paths) < n:
        raise Violation(rule, f"expected {n} position(s), got {len(paths)}")
    return list(paths)


def _sub(rule: str, s: Structure, path: str) -> Structure:
    try:
        return at(s, path)
    except InvalidPath as exc:
        raise Violation(rule, f"invalid path {path!r}: {exc}") from None


def _principal(rule: str, s: Structure, path: str, kind: type) -> Formula:
    f = _sub(rule, s, path)
    if not isinstance(f, kind):
        raise Violation(rule, f"expected a {kind.__name__} formula at {path!r}, found {f}")
    return f


def _top_context(rule: str, s: Structure, path: str, mode: str) -> Structure:
    """The context of the occurrence at ``path`` once it sits at the top-right."""
    if mode == MODULO:
        return designate(s, path)
    if path == "R" and isinstance(s, Pair):
        return s.left
    if path == "" and not isinstance(s, Pair):
        return EMPTY
    raise Violation(rule, f"principal occurrence must be at the top-right, got path {path!r} in {s}")


def _unlicensed(rule: str, sig: Signature, s: Structure, axiom: str) -> Violation:
    for _, f in leaves(s):
        if not isinstance(f, Quest):
            return Violation(rule, f"{f} is not a ?-formula")
        if not sig.has(f.label, axiom):
            return Violation(rule, f"unlicensed: index {f.label} lacks axiom {axiom}")
    return Violation(rule, "unlicensed")


def _shape_error(rule: str, expected: str, got: Structure) -> Violation:
    return Violation(rule, f"shape mismatch: expected {expected}, designated conclusion is {got}")


def premise_candidates(rule: str, concl: Structure, paths: Sequence[str] = (), label: str | None = None,
                       formula: Formula | None = None, sig: Signature = Signature(),
                       mode: str = MODULO) -> list[tuple[Structure, ...]]:
    """Premise structures allowed by ``rule`` for conclusion ``concl``.

    Raises :class:`Violation` when the rule cannot apply at all.  ``QC`` is
    not covered here; see :func:`check_step`.
    """
    if rule not in ARITY:
        raise Violation(rule, "unknown rule")
    if mode == MODULO and rule in STRICT_ONLY:
        raise Violation(rule, "explicit structural rules exist only in strict mode")
    c = concl

    if rule == "Init":
        if (isinstance(c, Pair) and isinstance(c.left, LITERALS) and isinstance(c.right, LITERALS)
                and c.right == negate(c.left)):
            return [()]
        raise _shape_error(rule, "(A, A^) for a literal A", c)
    if rule == "OneAx":
        if c == ONE:
            return [()]
        raise _shape_error(rule, "1", c)
    if rule in ("E", "A1", "A2"):
        return [(_structural(rule, c),)]

    if rule == "Cut":
        if formula is None:
            raise Violation(rule, "no cut formula recorded")
        if mode == MODULO:
            splits = split_points(c)
        else:
            splits = [(c, EMPTY), (EMPTY, c)]
            if isinstance(c, Pair):
                splits.insert(0, (c.left, c.right))
        return [(pair(g, formula), pair(negate(formula), d)) for g, d in splits]

    (p, *rest) = _need_path(rule, paths)

    if rule == "TopAx":
        _principal(rule, c, p, type(TOP))
        return [()]
    if rule == "BotIntro":
        _principal(rule, c, p, type(BOT))
        return [(replace(c, p, EMPTY),)]
    if rule == "Par":
        f = _principal(rule, c, p, Par)
        return [(replace(c, p, Pair(f.left, f.right)),)]
    if rule in ("PlusL", "PlusR"):
        f = _principal(rule, c, p, Plus)
        return [(replace(c, p, f.left if rule == "PlusL" else f.right),)]
    if rule == "With":
        f = _principal(rule, c, p, With)
        return [(replace(c, p, f.left), replace(c, p, f.right))]
    if rule == "Der":
        f = _principal(rule, c, p, Quest)
        _check_label(rule, label, f.label)
        return [(replace(c, p, f.body),)]
    if rule == "Tensor":
        f = _principal(rule, c, p, Tensor)
        x = _top_context(rule, c, p, mode)
        if x is EMPTY:
            splits = [(EMPTY, EMPTY)]
        else:
            splits = [(x, EMPTY), (EMPTY, x)]
            if isinstance(x, Pair):
                splits.insert(0, (x.left, x.right))
        return [(pair(g, f.right), pair(d, f.left)) for g, d in splits]
    if rule == "Prom":
        f = _principal(rule, c, p, Bang)
        _check_label(rule, label, f.label)
        ctx = _top_context(rule, c, p, mode)
        try:
            restricted = upset_restrict(sig, ctx, f.label)
        except NotApplicable as exc:
            raise Violation(rule, f"promotion context is not ?-marked: {exc}") from None
        if restricted is None:
            raise Violation(rule, f"promotion undefined: context {ctx} has no restriction to index {f.label}")
        return [(pair(restricted, f.body),)]
    if rule == "QW":
        sub = _sub(rule, c, p)
        if not licensed(sig, sub, "W"):
            raise _unlicensed(rule, sig, sub, "W")
        return [(replace(c, p, EMPTY),)]
    if rule in ("QE", "QA1", "QA2"):
        q = _sub(rule, c, p)
        axiom = Q_AXIOM[rule]
        if not licensed(sig, q, axiom):
            raise _unlicensed(rule, sig, q, axiom)
        if not p:
            raise Violation(rule, "the ?-structure cannot be the whole sequent")
        x = _top_context(rule, c, p, mode)
        return [(Pair(_q_shape(rule, x), q),)]
    raise Violation(rule, "rule is checked elsewhere")


def _check_label(rule: str, recorded: str | None, actual: str) -> None:
    if recorded is not None and recorded != actual:
        raise Violation(rule, f"recorded label {recorded} but the principal formula has label {actual}")


def _structural(rule: str, c: Structure) -> Structure:
    if rule == "E" and isinstance(c, Pair):
        return Pair(c.right, c.left)
    if rule == "A1" and isinstance(c, Pair) and isinstance(c.left, Pair):
        return Pair(c.left.left, Pair(c.left.right, c.right))
    if rule == "A2" and isinstance(c, Pair) and isinstance(c.right, Pair):
        return Pair(Pair(c.left, c.right.left), c.right.right)
    shapes = {"E": "(G, D)", "A1": "((G, D), P)", "A2": "(G, (D, P))"}
    raise _shape_error(rule, shapes[rule], c)


def _q_shape(rule: str, x: Structure) -> Structure:
    if rule == "QE" and isinstance(x, Pair):
        return Pair(x.right, x.left)
    if rule == "QA1" and isinstance(x, Pair) and isinstance(x.right, Pair):
        return Pair(Pair(x.left, x.right.left), x.right.right)
    if rule == "QA2" and isinstance(x, Pair) and isinstance(x.left, Pair):
        return Pair(x.left.left, Pair(x.left.right, x.right))
    shapes = {"QE": "((D1, D2), ?G)", "QA1": "((D1, (D2, D3)), ?G)", "QA2": "(((D1, D2), D3), ?G)"}
    raise _shape_error(rule, shapes[rule], x)


def contraction_candidates(concl: Structure, premise: Structure, paths: Sequence[str]) -> list[Structure]:
    """Structures obtained from ``premise`` by deleting all but one recorded copy.

    ``paths[0]`` addresses the contracted structure in the conclusion; the
    remaining paths address its copies in the premise.
    """
    copies = list(paths[1:])
    if len(copies) < 2:
        raise Violation("QC", "contraction needs at least two copies in the premise")
    delta = _sub("QC", concl, paths[0])
    for q in copies:
        if _sub("QC", premise, q) != delta:
            raise Violation("QC", f"premise has {at(premise, q)} at {q!r}, expected {delta}")
    for i, a in enumerate(copies):
        for b in copies[i + 1:]:
            if not disjoint(a, b):
                raise Violation("QC", f"copies at {a!r} and {b!r} overlap")
    out = []
    for keep in copies:
        out.append(replace_many(premise, {q: EMPTY for q in copies if q != keep}))
    return out


def _same(a: Structure, b: Structure, mode: str) -> bool:
    return a == b if mode == STRICT else equivalent(a, b)


def check_step(rule: str, conclusion: Sequent, paths: Sequence[str], label: str | None,
               premises: Sequence[Sequent], sig: Signature, mode: str = MODULO,
               formula: Formula | None = None) -> None:
    """Validate one inference; raises :class:`Violation` if it does not check."""
    if rule not in ARITY:
        raise Violation(rule, "unknown rule")
    if len(premises) != ARITY[rule]:
        raise Violation(rule, f"arity mismatch: expected {ARITY[rule]} premise(s), got {len(premises)}")
    for s in (conclusion, *premises):
        if not isinstance(s, Sequent):
            raise Violation(rule, f"not a classical sequent: {s}")
    c = conclusion.structure
    actual = [s.structure for s in premises]
    if rule == "QC":
        _need_path(rule, paths)
        delta = _sub(rule, c, paths[0])
        if not licensed(sig, delta, "C"):
            raise _unlicensed(rule, sig, delta, "C")
        if any(_same(x, c, mode) for x in contraction_candidates(c, actual[0], paths)):
            return
        raise Violation(rule, f"deleting the extra copies from {actual[0]} does not give {c}")
    candidates = premise_candidates(rule, c, paths, label, formula, sig, mode)
    for cand in candidates:
        if any(x is EMPTY for x in cand):
            continue
        if all(_same(x, y, mode) for x, y in zip(cand, actual)):
            return
    shown = "; ".join(", ".join(str(x) for x in cand) for cand in candidates[:4])
    raise Violation(rule, f"premises {', '.join(map(str, actual))} match no instance (expected one of: {shown})")


def check_proof(proof: Proof, sig: Signature, mode: str = MODULO) -> None:
    """Check every node; raises :class:`Violation` located at the first failure."""
    try:
        check_step(proof.rule, proof.conclusion, proof.at, proof.label,
                   [p.conclusion for p in proof.premises], sig, mode, proof.formula)
    except Violation as v:
        raise Violation(v.rule, v.message, ()) from None
    for i, p in enumerate(proof.premises):
        try:
            check_proof(p, sig, mode)
        except Violation as v:
            raise v.located(i) from None


def is_valid(proof: Proof, sig: Signature, mode: str = MODULO) -> bool:
    try:
        check_proof(proof, sig, mode)
    except Violation:
        return False
    return True



def erase_structural(proof: Proof) -> Proof:
    """Drop explicit E/A1/A2 nodes, turning a strict proof into a modulo one.

    Structural steps at the root are dropped too, so the result concludes a
    sequent equivalent to (not necessarily equal to) the original; use
    :func:`bridge` to restore the literal conclusion in strict mode.
    """
    while proof.rule in STRICT_ONLY:
        proof = proof.premises[0]
    return dataclasses.replace(proof, premises=tuple(erase_structural(p) for p in proof.premises))


_INVERSE = {E: E, A1: A2, A2: A1}


def _to_canonical(s: Structure) -> list[tuple[str, Structure]]:
    best = None
    for path, _ in leaves(s):
        rotated, steps = rotation_steps(s, path)
        if best is None or str(rotated) < str(best[0]):
            best = (rotated, steps)
    return best[1]


def bridge(conclusion: Structure, proof: Proof) -> Proof:
    """Prefix ``proof`` with explicit E/A1/A2 steps so it concludes ``conclusion``.

    Both structures are driven to the same canonical rotation; the steps from
    the proof's side are replayed inverted.
    """
    target = proof.conclusion.structure
    if conclusion == target:
        return proof
    if not equivalent(conclusion, target):
        raise ValueError(f"{conclusion} and {target} are not equivalent")
    down = _to_canonical(conclusion)
    up = _to_canonical(target)
    current = target
    for rule, nxt in up:
        proof = Proof(_INVERSE[rule], Sequent(nxt), premises=(proof,))
        current = nxt
    structures = [conclusion] + [x for _, x in down]
    for (rule, _), concl in reversed(list(zip(down, structures))):
        proof = Proof(rule, Sequent(concl), premises=(proof,))
    return proof


def _local_shapes(proof: Proof) -> list[tuple[Structure, tuple[str, ...]]]:
    """Literal variants of the conclusion on which the rule fires in strict mode."""
    c = proof.conclusion.structure
    rule, paths = proof.rule, proof.at
    if rule in ("Tensor", "Prom", "QE", "QA1", "QA2"):
        p = paths[0]
        ctx = designate(c, p)
        return [(pair(ctx, at(c, p)), ("R",) if ctx is not EMPTY else ("",))]
    if rule == "Cut":
        return [(c, ())] + [(rotate(c, p), ()) for p, _ in nodes(c) if p]
    if rule == "Init" and isinstance(c, Pair):
        return [(c, ()), (Pair(c.right, c.left), ())]
    return [(c, paths)]


def to_strict(proof: Proof, sig: Signature) -> Proof:
    """Expand a modulo-mode proof into a strict one by inserting E/A1/A2 steps."""
    premises = [to_strict(p, sig) for p in proof.premises]
    c = proof.conclusion.structure
    if proof.rule == "QC":
        kept = [s for s in contraction_candidates(c, premises[0].conclusion.structure, proof.at)
                if equivalent(s, c)][0]
        delta = at(c, proof.at[0])
        head = next(p for p, sub in nodes(kept) if sub == delta)
        inner = Proof("QC", Sequent(kept), (head, *proof.at[1:]), proof.label, proof.formula,
                      tuple(premises), proof.note)
        return bridge(c, inner)
    actual = [p.conclusion.structure for p in premises]
    for local, paths in _local_shapes(proof):
        try:
            cands = premise_candidates(proof.rule, local, paths, proof.label, proof.formula, sig, STRICT)
        except Violation:
            continue
        for cand in cands:
            if any(x is EMPTY for x in cand):
                continue
            if all(equivalent(x, y) for x, y in zip(cand, actual)):
                inner = Proof(proof.rule, Sequent(local), paths, proof.label, proof.formula,
                              tuple(bridge(x, p) for x, p in zip(cand, premises)), proof.note)
                return bridge(c, inner)
    raise Violation(proof.rule, f"no strict instance for {proof.conclusion}")
