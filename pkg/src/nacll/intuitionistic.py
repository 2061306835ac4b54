"""Two-sided intuitionistic systems: rules and proof checking.

Sequents are ``antecedent |- succedent`` with a single succedent formula.
There are no free structural rules here, so every shape is literal.  Left
rules address a node of the antecedent by path; structural left rules for
subexponentials address the pair node they rearrange.

``ALL`` has one associativity rule each way (``A1``, ``A2``); ``ALL_PLUS``
has the six rules ``A1L`` .. ``A2R`` and still accepts ``A1``/``A2`` as
names for ``A1L``/``A2R``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .classical import contraction_candidates
from .proof import Proof, Violation
from .signature import NotApplicable, Signature, licensed, upset_restrict
from .syntax import (EMPTY, ONE, TOP, ZERO, Atom, Bang, Formula, ImplL, ImplR, InvalidPath,
                     ISequent, Pair, Plus, Structure, Tensor, With, at, is_intuitionistic, leaves,
                     pair, replace)


@dataclass(frozen=True)
class ISystem:
    name: str
    zero: bool = False

    @property
    def rules(self) -> frozenset[str]:
        rules = set(BASE_RULES) | {"BangW", "BangC", "BangE", "A1", "A2"}
        if self.name == "ALL_PLUS":
            rules |= set(PLUS_ASSOC)
        if self.zero:
            rules.add("ZeroL")
        return frozenset(rules)

    def with_zero(self, zero: bool = True) -> "ISystem":
        return ISystem(self.name, zero)

    def __str__(self) -> str:
        return self.name + ("+0" if self.zero else "")


BASE_RULES = ("Id", "TensorR", "TensorL", "ArrowR", "ArrowL", "BackR", "BackL", "WithR", "WithL1",
              "WithL2", "PlusR1", "PlusR2", "PlusL", "OneR", "OneL", "TopR", "BangL", "BangR")
PLUS_ASSOC = ("A1L", "A1M", "A1R", "A2L", "A2M", "A2R")
ALL = ISystem("ALL")
ALL_PLUS = ISystem("ALL_PLUS")
ALIASES = {"A1": "A1L", "A2": "A2R"}

ARITY = {r: 1 for r in (*BASE_RULES, *PLUS_ASSOC, "A1", "A2", "BangW", "BangC", "BangE")}
ARITY.update({"Id": 0, "OneR": 0, "TopR": 0, "ZeroL": 0,
              "TensorR": 2, "ArrowL": 2, "BackL": 2, "WithR": 2, "PlusL": 2})
RULES = tuple(ARITY)


def _sub(rule: str, s: Structure, path: str) -> Structure:
    try:
        return at(s, path)
    except InvalidPath as exc:
        raise Violation(rule, f"invalid path {path!r}: {exc}") from None


def _leaf(rule: str, s: Structure, path: str, kind: type) -> Formula:
    f = _sub(rule, s, path)
    if not isinstance(f, kind):
        raise Violation(rule, f"expected a {kind.__name__} formula at {path!r}, found {f}")
    return f


def _goal(rule: str, c: Formula, kind: type) -> Formula:
    if not isinstance(c, kind):
        raise Violation(rule, f"shape mismatch: expected a {kind.__name__} succedent, found {c}")
    return c


def _bang(rule: str, sig: Signature, s: Structure, axiom: str) -> None:
    if licensed(sig, s, axiom, Bang):
        return
    for _, f in leaves(s):
        if not isinstance(f, Bang):
            raise Violation(rule, f"{f} is not a !-formula")
        if not sig.has(f.label, axiom):
            raise Violation(rule, f"unlicensed: index {f.label} lacks axiom {axiom}")


def _assoc(rule: str, node: Structure, sig: Signature) -> Structure:
    """Premise shape of an associativity rule at ``node`` (the conclusion's node)."""
    base = ALIASES.get(rule, rule)
    left_nested = base in ("A1M", "A2L", "A2R")
    if not isinstance(node, Pair) or not isinstance(node.left if left_nested else node.right, Pair):
        raise Violation(rule, f"shape mismatch: {node} does not have the {base} conclusion shape")
    if left_nested:
        d1, d2, d3 = node.left.left, node.left.right, node.right
        premise = Pair(d1, Pair(d2, d3))
    else:
        d1, d2, d3 = node.left, node.right.left, node.right.right
        premise = Pair(Pair(d1, d2), d3)
    # conclusions: A1L (!D1,(D2,D3))  A1M ((D1,!D2),D3)  A1R (D1,(D2,!D3))
    #              A2L ((!D1,D2),D3)  A2M (D1,(!D2,D3))  A2R ((D1,D2),!D3)
    marked = {"L": d1, "M": d2, "R": d3}[base[2]]
    _bang(rule, sig, marked, base[:2])
    return premise


def premise_candidates(rule: str, concl: ISequent, paths: Sequence[str] = (), label: str | None = None,
                       sig: Signature = Signature(), system: ISystem = ALL) -> list[tuple[ISequent, ...]]:
    """Premise sequents allowed by ``rule`` for ``concl``; ``BangC`` is handled in :func:`check_step_i`."""
    if rule not in ARITY:
        raise Violation(rule, "unknown rule")
    if rule not in system.rules:
        raise Violation(rule, f"system mismatch: rule not in {system}")
    g, c = concl.antecedent, concl.succedent

    def seq(a: Structure, f: Formula = c) -> ISequent:
        return ISequent(a, f)

    if rule == "Id":
        if isinstance(c, Atom) and g == c:
            return [()]
        raise Violation(rule, f"shape mismatch: expected a |- a, found {concl}")
    if rule == "OneR":
        if g is EMPTY and c == ONE:
            return [()]
        raise Violation(rule, f"shape mismatch: expected |- 1, found {concl}")
    if rule == "TopR":
        _goal(rule, c, type(TOP))
        return [()]
    if rule == "TensorR":
        f = _goal(rule, c, Tensor)
        splits = [(g, EMPTY), (EMPTY, g)]
        if isinstance(g, Pair):
            splits.insert(0, (g.left, g.right))
        return [(seq(x, f.left), seq(y, f.right)) for x, y in splits]
    if rule == "ArrowR":
        f = _goal(rule, c, ImplR)
        return [(seq(pair(f.left, g), f.right),)]
    if rule == "BackR":
        f = _goal(rule, c, ImplL)
        return [(seq(pair(g, f.right), f.left),)]
    if rule == "WithR":
        f = _goal(rule, c, With)
        return [(seq(g, f.left), seq(g, f.right))]
    if rule in ("PlusR1", "PlusR2"):
        f = _goal(rule, c, Plus)
        return [(seq(g, f.left if rule == "PlusR1" else f.right),)]
    if rule == "BangR":
        f = _goal(rule, c, Bang)
        if label is not None and label != f.label:
            raise Violation(rule, f"recorded label {label} but the succedent has label {f.label}")
        try:
            restricted = upset_restrict(sig, g, f.label, Bang)
        except NotApplicable as exc:
            raise Violation(rule, f"promotion context is not !-marked: {exc}") from None
        if restricted is None:
            raise Violation(rule, f"promotion undefined: antecedent {g} has no restriction to index {f.label}")
        return [(seq(restricted, f.body),)]

    if not paths:
        raise Violation(rule, "expected a position in the antecedent")
    p = paths[0]
    if rule == "ZeroL":
        _leaf(rule, g, p, type(ZERO))
        return [()]
    if rule == "TensorL":
        f = _leaf(rule, g, p, Tensor)
        return [(seq(replace(g, p, Pair(f.left, f.right))),)]
    if rule in ("WithL1", "WithL2"):
        f = _leaf(rule, g, p, With)
        return [(seq(replace(g, p, f.left if rule == "WithL1" else f.right)),)]
    if rule == "PlusL":
        f = _leaf(rule, g, p, Plus)
        return [(seq(replace(g, p, f.left)), seq(replace(g, p, f.right)))]
    if rule == "OneL":
        _leaf(rule, g, p, type(ONE))
        return [(seq(replace(g, p, EMPTY)),)]
    if rule == "BangL":
        f = _leaf(rule, g, p, Bang)
        if label is not None and label != f.label:
            raise Violation(rule, f"recorded label {label} but the formula has label {f.label}")
        return [(seq(replace(g, p, f.body)),)]
    if rule in ("ArrowL", "BackL"):
        kind = ImplR if rule == "ArrowL" else ImplL
        node = _sub(rule, g, p)
        if isinstance(node, kind):
            f, delta = node, EMPTY
        elif isinstance(node, Pair) and rule == "ArrowL" and isinstance(node.right, ImplR):
            f, delta = node.right, node.left
        elif isinstance(node, Pair) and rule == "BackL" and isinstance(node.left, ImplL):
            f, delta = node.left, node.right
        else:
            want = "(D, A -> B)" if rule == "ArrowL" else "(B <- A, D)"
            raise Violation(rule, f"shape mismatch: expected {want} at {p!r}, found {node}")
        arg, res = (f.left, f.right) if rule == "ArrowL" else (f.right, f.left)
        return [(seq(delta, arg), seq(replace(g, p, res)))]
    if rule == "BangW":
        sub = _sub(rule, g, p)
        _bang(rule, sig, sub, "W")
        return [(seq(replace(g, p, EMPTY)),)]
    if rule == "BangE":
        node = _sub(rule, g, p)
        if not isinstance(node, Pair):
            raise Violation(rule, f"shape mismatch: expected a pair at {p!r}, found {node}")
        if not (licensed(sig, node.left, "E", Bang) or licensed(sig, node.right, "E", Bang)):
            side = node.left if any(not isinstance(f, Bang) for _, f in leaves(node.right)) else node.right
            _bang(rule, sig, side, "E")
        return [(seq(replace(g, p, Pair(node.right, node.left))),)]
    if rule in ("A1", "A2", *PLUS_ASSOC):
        node = _sub(rule, g, p)
        return [(seq(replace(g, p, _assoc(rule, node, sig))),)]
    raise Violation(rule, "rule is checked elsewhere")


def check_step_i(rule: str, conclusion: ISequent, paths: Sequence[str], label: str | None,
                 premises: Sequence[ISequent], sig: Signature, system: ISystem = ALL) -> None:
    if rule not in ARITY:
        raise Violation(rule, "unknown rule")
    if rule not in system.rules:
        raise Violation(rule, f"system mismatch: rule not in {system}")
    if len(premises) != ARITY[rule]:
        raise Violation(rule, f"arity mismatch: expected {ARITY[rule]} premise(s), got {len(premises)}")
    for s in (conclusion, *premises):
        if not isinstance(s, ISequent):
            raise Violation(rule, f"not a two-sided sequent: {s}")
    if rule == "BangC":
        if not paths:
            raise Violation(rule, "expected positions")
        prem = premises[0]
        if prem.succedent != conclusion.succedent:
            raise Violation(rule, "succedent changed")
        _bang(rule, sig, _sub(rule, conclusion.antecedent, paths[0]), "C")
        try:
            options = contraction_candidates(conclusion.antecedent, prem.antecedent, paths)
        except Violation as v:
            raise Violation(rule, v.message) from None
        if conclusion.antecedent in options:
            return
        raise Violation(rule, f"deleting the extra copies from {prem} does not give {conclusion}")
    candidates = premise_candidates(rule, conclusion, paths, label, sig, system)
    if tuple(premises) in [tuple(c) for c in candidates]:
        return
    shown = "; ".join(", ".join(map(str, c)) for c in candidates[:4])
    raise Violation(rule, f"premises {', '.join(map(str, premises))} match no instance (expected one of: {shown})")


def check_proof_i(proof: Proof, sig: Signature, system: ISystem = ALL) -> None:
    try:
        check_step_i(proof.rule, proof.conclusion, proof.at, proof.label,
                     [p.conclusion for p in proof.premises], sig, system)
    except Violation as v:
        raise Violation(v.rule, v.message) from None
    for i, p in enumerate(proof.premises):
        try:
            check_proof_i(p, sig, system)
        except Violation as v:
            raise v.located(i) from None


def is_valid_i(proof: Proof, sig: Signature, system: ISystem = ALL) -> bool:
    try:
        check_proof_i(proof, sig, system)
    except Violation:
        return False
    return True


def formulas_ok(seq: ISequent, zero: bool = False) -> bool:
    return all(is_intuitionistic(f, zero) for _, f in leaves(seq.antecedent)) and \
        is_intuitionistic(seq.succedent, zero)
