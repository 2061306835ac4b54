"""The hat translation into the classical system and proof transport both ways.

``hat`` maps implications to pars with a negated argument and is
homomorphic elsewhere.  Its image and the image of ``negate . hat`` are
recognised by two mutually recursive grammars (:func:`classify`); a
classical sequent built from such formulas with exactly one positive leaf
untranslates to a unique two-sided sequent.

``lift_proof`` maps each intuitionistic step to the classical step acting on
the translated formula.  ``lower_proof`` goes the other way, matching each
classical step to an intuitionistic one between the untranslated sequents
and falling back to search (recorded in the node's note) when no single
step fits.
"""
from __future__ import annotations

from enum import Enum
from functools import lru_cache
from itertools import permutations

from . import classical as C
from . import intuitionistic as I
from .equivalence import designate
from .proof import Proof, Violation
from .signature import Signature
from .syntax import (BOT, EMPTY, ONE, TOP, ZERO, Atom, Bang, Formula, ImplL, ImplR, ISequent,
                     NegAtom, Pair, Par, Plus, Quest, Sequent, Structure, Tensor, With,
                     at, check_intuitionistic, leaves, negate, nodes, pair)


class NotATranslation(ValueError):
    """The classical input is not the image of an intuitionistic sequent."""


class Polarity(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    NEITHER = "Neither"


@lru_cache(maxsize=None)
def hat(f: Formula) -> Formula:
    if isinstance(f, Atom) or f in (ONE, TOP, ZERO):
        return f
    if isinstance(f, ImplR):
        return Par(negate(hat(f.left)), hat(f.right))
    if isinstance(f, ImplL):
        return Par(hat(f.left), negate(hat(f.right)))
    if isinstance(f, (Tensor, With, Plus)):
        return type(f)(hat(f.left), hat(f.right))
    if isinstance(f, Bang):
        return Bang(f.label, hat(f.body))
    check_intuitionistic(f, zero=True)
    raise ValueError(f"cannot translate {f}")


def co_hat(f: Formula) -> Formula:
    return negate(hat(f))


def translate_antecedent(s: Structure) -> Structure:
    if s is EMPTY:
        return EMPTY
    if isinstance(s, Pair):
        return Pair(translate_antecedent(s.right), translate_antecedent(s.left))
    return co_hat(s)


def translate_sequent(seq: ISequent) -> Sequent:
    return Sequent(pair(translate_antecedent(seq.antecedent), hat(seq.succedent)))


def _flip(path: str) -> str:
    return path.translate(str.maketrans("LR", "RL"))


def antecedent_path(seq: ISequent, path: str) -> str:
    """Where the antecedent node at ``path`` lands in the translated sequent."""
    return "L" + _flip(path)


def succedent_path(seq: ISequent) -> str:
    return "" if seq.antecedent is EMPTY else "R"


# -- recognisers -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _unpos(f: Formula) -> Formula | None:
    """The intuitionistic ``C`` with ``hat(C) == f``, if any."""
    if isinstance(f, Atom) or f in (ONE, TOP):
        return f
    if isinstance(f, (Tensor, With, Plus)):
        a, b = _unpos(f.left), _unpos(f.right)
        return type(f)(a, b) if a and b else None
    if isinstance(f, Bang):
        body = _unpos(f.body)
        return Bang(f.label, body) if body else None
    if isinstance(f, Par):
        a, b = _unneg(f.left), _unpos(f.right)
        if a and b:
            return ImplR(a, b)
        b, a = _unpos(f.left), _unneg(f.right)
        if a and b:
            return ImplL(b, a)
    return None


@lru_cache(maxsize=None)
def _unneg(f: Formula) -> Formula | None:
    """The intuitionistic ``C`` with ``negate(hat(C)) == f``, if any."""
    if isinstance(f, NegAtom):
        return Atom(f.name)
    if f == BOT:
        return ONE
    if f == ZERO:
        return TOP
    if isinstance(f, Par):
        a, b = _unneg(f.right), _unneg(f.left)
        return Tensor(a, b) if a and b else None
    if isinstance(f, Tensor):
        a, b = _unpos(f.right), _unneg(f.left)
        if a and b:
            return ImplR(a, b)
        a, b = _unpos(f.left), _unneg(f.right)
        if a and b:
            return ImplL(b, a)
        return None
    if isinstance(f, (Plus, With)):
        a, b = _unneg(f.left), _unneg(f.right)
        dual = With if isinstance(f, Plus) else Plus
        return dual(a, b) if a and b else None
    if isinstance(f, Quest):
        body = _unneg(f.body)
        return Bang(f.label, body) if body else None
    return None


def classify(f: Formula) -> Polarity:
    """Positive on hat images, Negative on negated hat images (0-free)."""
    if _unpos(f) is not None:
        return Polarity.POSITIVE
    if _unneg(f) is not None:
        return Polarity.NEGATIVE
    return Polarity.NEITHER


def h_count(f: Formula) -> int | None:
    return {Polarity.POSITIVE: 0, Polarity.NEGATIVE: 1}.get(classify(f))


def polarizable(seq: Sequent) -> str | None:
    """Path of the unique positive leaf, or ``None`` when there is not exactly one."""
    positive = []
    for p, f in leaves(seq.structure):
        c = classify(f)
        if c is Polarity.NEITHER:
            raise NotATranslation(f"{f} is neither a translated formula nor the negation of one")
        if c is Polarity.POSITIVE:
            positive.append(p)
    return positive[0] if len(positive) == 1 else None


def _untranslate_antecedent(s: Structure) -> Structure:
    if s is EMPTY:
        return EMPTY
    if isinstance(s, Pair):
        return Pair(_untranslate_antecedent(s.right), _untranslate_antecedent(s.left))
    g = _unneg(s)
    if g is None:
        raise NotATranslation(f"{s} is not a negated translated formula")
    return g


def untranslate(seq: Sequent) -> ISequent:
    """The two-sided sequent whose translation is equivalent to ``seq``."""
    p = polarizable(seq)
    if p is None:
        raise NotATranslation(f"{seq} does not have exactly one positive formula")
    ctx = designate(seq.structure, p)
    return ISequent(_untranslate_antecedent(ctx), _unpos(at(seq.structure, p)))


# -- lifting -----------------------------------------------------------------------

_LIFT = {
    "Id": "Init", "OneR": "OneAx", "TopR": "TopAx", "ZeroL": "TopAx", "TensorR": "Tensor",
    "TensorL": "Par", "ArrowR": "Par", "BackR": "Par", "ArrowL": "Tensor", "BackL": "Tensor",
    "WithR": "With", "WithL1": "PlusL", "WithL2": "PlusR", "PlusR1": "PlusL", "PlusR2": "PlusR",
    "PlusL": "With", "OneL": "BotIntro", "BangL": "Der", "BangR": "Prom", "BangW": "QW",
    "BangC": "QC", "BangE": "QE",
}


def _lift_candidates(proof: Proof, target: Sequent):
    rule, seq = proof.rule, proof.conclusion
    base = I.ALIASES.get(rule, rule)
    if base in I.PLUS_ASSOC:
        q_rules = ["QA1"] if base.startswith("A1") else ["QA2"]
        for r in q_rules + ["QA2" if q_rules == ["QA1"] else "QA1"]:
            for p, _ in nodes(target.structure):
                if p:
                    yield r, (p,)
        return
    if rule == "BangE":
        for p, _ in nodes(target.structure):
            if p:
                yield "QE", (p,)
        return
    crule = _LIFT[rule]
    if rule in ("Id", "OneR"):
        yield crule, ()
    elif rule in ("TopR", "TensorR", "ArrowR", "BackR", "WithR", "PlusR1", "PlusR2", "BangR"):
        yield crule, (succedent_path(seq),)
    elif rule in ("ArrowL", "BackL"):
        node = proof.at[0]
        yield crule, (antecedent_path(seq, node),)
        yield crule, (antecedent_path(seq, node + ("R" if rule == "ArrowL" else "L")),)
    elif rule == "BangC":
        prem = proof.premises[0].conclusion
        yield crule, (antecedent_path(seq, proof.at[0]),
                      *(antecedent_path(prem, q) for q in proof.at[1:]))
    else:
        yield crule, (antecedent_path(seq, proof.at[0]),)


def lift_proof(proof: Proof, sig: Signature) -> Proof:
    """Classical modulo-mode proof of the translated end sequent."""
    premises = [lift_proof(p, sig) for p in proof.premises]
    target = translate_sequent(proof.conclusion)
    for rule, paths in _lift_candidates(proof, target):
        for order in permutations(premises):
            try:
                C.check_step(rule, target, paths, proof.label, [p.conclusion for p in order],
                             sig, C.MODULO)
            except Violation:
                continue
            return Proof(rule, target, paths, proof.label, None, tuple(order))
    raise Violation(proof.rule, f"no classical step lifts this inference at {proof.conclusion}")


# -- lowering ----------------------------------------------------------------------

_LOWER = {
    "Init": ["Id"], "OneAx": ["OneR"], "TopAx": ["TopR", "ZeroL"],
    "Par": ["TensorL", "ArrowR", "BackR"], "Tensor": ["TensorR", "ArrowL", "BackL"],
    "With": ["WithR", "PlusL"], "PlusL": ["WithL1", "PlusR1"], "PlusR": ["WithL2", "PlusR2"],
    "BotIntro": ["OneL"], "Der": ["BangL"], "Prom": ["BangR"], "QW": ["BangW"], "QC": ["BangC"],
    "QE": ["BangE"], "QA1": ["A1", "A1L", "A1M", "A1R"], "QA2": ["A2", "A2L", "A2M", "A2R"],
}


def _lower_paths(rule: str, seq: ISequent, premises: list[ISequent]):
    ante = [p for p, _ in nodes(seq.antecedent)] if seq.antecedent is not EMPTY else []
    if rule in ("Id", "OneR", "TopR", "TensorR", "ArrowR", "BackR", "WithR", "PlusR1", "PlusR2",
                "BangR"):
        yield ()
    elif rule == "BangC":
        copies = [p for p, _ in nodes(premises[0].antecedent)]
        for p in ante:
            for i, a in enumerate(copies):
                for b in copies[i + 1:]:
                    yield (p, a, b)
    else:
        yield from ((p,) for p in ante)


def _check_target(sig: Signature, system: I.ISystem) -> None:
    if system.name == "ALL" and any(sig.has(l, a) for l in sig.labels for a in ("A1", "A2")):
        raise ValueError("the signature licenses A1/A2; lower into ALL_PLUS instead")


def lower_proof(proof: Proof, sig: Signature, system: I.ISystem = I.ALL, budget=None) -> Proof:
    """Intuitionistic proof of the sequent whose translation ``proof`` concludes."""
    _check_target(sig, system)
    return _lower(proof, sig, system, budget)


def _lower(proof: Proof, sig: Signature, system: I.ISystem, budget) -> Proof:
    seq = untranslate(proof.conclusion)
    try:
        premises = [_lower(p, sig, system, budget) for p in proof.premises]
    except NotATranslation:
        return _fallback(seq, sig, system, budget, f"premise of {proof.rule} is not polarizable")
    for rule in _LOWER.get(proof.rule, []):
        if rule not in system.rules:
            continue
        for order in permutations(premises):
            concls = [p.conclusion for p in order]
            for paths in _lower_paths(rule, seq, concls):
                try:
                    I.check_step_i(rule, seq, paths, proof.label, concls, sig, system)
                except Violation:
                    continue
                return Proof(rule, seq, paths, proof.label, None, tuple(order))
    return _fallback(seq, sig, system, budget, f"no single step matches classical {proof.rule}")


def _fallback(seq: ISequent, sig: Signature, system: I.ISystem, budget, why: str) -> Proof:
    from .search import Budget, Proved, prove_intuitionistic
    outcome = prove_intuitionistic(seq, sig, system, budget or Budget())
    if not isinstance(outcome, Proved):
        raise Violation("lower", f"{why}; search found no proof of {seq} ({outcome})")
    p = outcome.proof
    return Proof(p.rule, p.conclusion, p.at, p.label, p.formula, p.premises,
                 note=f"fallback search: {why}")
