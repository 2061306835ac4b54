"""Seeded sequent corpora for the conservativity and quotient sweeps."""
from __future__ import annotations

import random
from itertools import product

from nacll.signature import load_signature
from nacll.syntax import ONE, Atom, Bang, ISequent, ImplL, ImplR, Pair, Plus, Tensor, With, \
    connective_count

SIGNATURES = {
    "empty": "",
    "exchange": "label e : E",
    "weakening": "label w : W",
    "contraction": "label c : C",
    "ordered": "label i : W\nlabel j : C, W, E\norder i <= j",
    "full": "label u : C, W, E",
}
BINARY = (Tensor, With, Plus, ImplR, ImplL)


def formulas(max_connectives: int, labels) -> list:
    by = [[Atom("a"), Atom("b"), ONE]]
    for n in range(1, max_connectives + 1):
        level = [Bang(l, f) for l in labels for f in by[n - 1]]
        for k in range(n):
            for f, g in product(by[k], by[n - 1 - k]):
                level.extend(c(f, g) for c in BINARY)
        by.append(level)
    return [f for level in by for f in level]


def _size(seq: ISequent) -> int:
    from nacll.syntax import leaves
    return sum(connective_count(f) for _, f in leaves(seq.antecedent)) + \
        connective_count(seq.succedent)


def intuitionistic_corpus(per_signature: int = 60, seed: int = 2024, max_connectives: int = 5):
    """(signature name, signature, sequent) triples.

    For each signature: identity sequents F |- F, then a seeded sample of one-,
    two- and three-formula antecedents drawn from all formulas with at most
    two connectives, keeping sequents with at most ``max_connectives``.
    """
    rng = random.Random(seed)
    out = []
    for name, text in SIGNATURES.items():
        sig = load_signature(text)
        pool = formulas(2, sig.labels)
        chosen: list[ISequent] = []
        seen = set()

        def add(seq):
            if seq not in seen and _size(seq) <= max_connectives:
                seen.add(seq)
                chosen.append(seq)

        for f in rng.sample(pool, 12):
            add(ISequent(f, f))
        while len(chosen) < per_signature:
            k = rng.choice((1, 2, 2, 3))
            ante = [rng.choice(pool) for _ in range(k)]
            if k == 1:
                s = ante[0]
            elif k == 2:
                s = Pair(*ante)
            else:
                s = rng.choice((Pair(Pair(ante[0], ante[1]), ante[2]),
                                Pair(ante[0], Pair(ante[1], ante[2]))))
            add(ISequent(s, rng.choice(pool)))
        out.extend((name, sig, s) for s in chosen)
    return out


def _templates(a):
    """Provable-looking sequents with ``a`` as an antecedent leaf, and that leaf's path."""
    y = Atom("b")
    return [
        (ISequent(Pair(a, y), Tensor(a, y)), "L"),
        (ISequent(Pair(y, a), Tensor(y, a)), "R"),
        (ISequent(a, Plus(a, y)), ""),
        (ISequent(a, Plus(y, a)), ""),
        (ISequent(Pair(y, a), Tensor(y, a)), "R"),
        (ISequent(Pair(a, ImplR(a, y)), y), "L"),
        (ISequent(Pair(ImplL(y, a), a), y), "R"),
        (ISequent(a, ImplR(y, Tensor(y, a))), ""),
        (ISequent(a, ImplL(Tensor(a, y), y)), ""),
    ]


def cut_compositions(lefts, count: int = 100, seed: int = 7):
    """Classical cut proofs built from two cut-free lemmas over a shared cut formula.

    ``lefts`` lists (signature, sequent) pairs for proved, non-identity
    intuitionistic sequents G |- A; each is a left lemma.  The right
    lemma puts A in an antecedent through one of a few fixed templates.  Both
    are proved by search and rotated so the cut formula sits at the top-right.
    Returns (signature, cut proof) pairs.
    """
    from nacll.embedding import antecedent_path, succedent_path, translate_sequent
    from nacll.equivalence import designate
    from nacll.proof import Proof
    from nacll.search import Budget, Proved, prove_classical
    from nacll.syntax import Sequent, at, pair

    rng = random.Random(seed)
    candidates = []
    for sig, left in lefts:
        for right, leaf in _templates(left.succedent):
            candidates.append((sig, left, right, leaf))
    rng.shuffle(candidates)
    out = []
    for sig, left, right, leaf in candidates:
        p1 = prove_classical(translate_sequent(left), sig, Budget())
        p2 = prove_classical(translate_sequent(right), sig, Budget())
        if not (isinstance(p1, Proved) and isinstance(p2, Proved)):
            continue
        s1, s2 = p1.proof.conclusion, p2.proof.conclusion
        a_path = succedent_path(left)
        na_path = antecedent_path(right, leaf)
        gamma = designate(s1.structure, a_path)
        delta = designate(s2.structure, na_path)
        cut_formula = at(s1.structure, a_path)
        concl = Sequent(pair(gamma, delta))
        out.append((sig, Proof("Cut", concl, (), None, cut_formula, (p1.proof, p2.proof))))
        if len(out) == count:
            break
    return out


def classical_formulas(max_connectives: int, labels) -> list:
    from nacll.syntax import BOT, TOP, NegAtom, Par, Quest
    by = [[Atom("a"), Atom("b"), NegAtom("a"), NegAtom("b"), ONE, BOT, TOP]]
    for n in range(1, max_connectives + 1):
        level = [m(l, f) for m in (Bang, Quest) for l in labels for f in by[n - 1]]
        for k in range(n):
            for f, g in product(by[k], by[n - 1 - k]):
                level.extend(c(f, g) for c in (Tensor, Par, Plus, With))
        by.append(level)
    return [f for level in by for f in level]


def classical_corpus(per_signature: int = 40, seed: int = 11, max_connectives: int = 4):
    """Seeded one-sided sequents: identity pairs (F, F^) plus random one- to three-formula structures."""
    from nacll.syntax import Sequent, leaves, negate
    rng = random.Random(seed)
    out = []
    for name, text in SIGNATURES.items():
        sig = load_signature(text)
        pool = classical_formulas(2, sig.labels)
        chosen, seen = [], set()

        def add(s):
            seq = Sequent(s)
            size = sum(connective_count(f) for _, f in leaves(s))
            if seq not in seen and size <= max_connectives:
                seen.add(seq)
                chosen.append(seq)

        for f in rng.sample(pool, 10):
            add(rng.choice((Pair(f, negate(f)), Pair(negate(f), f))))
        while len(chosen) < per_signature:
            fs = [rng.choice(pool) for _ in range(rng.choice((1, 2, 2, 3)))]
            if len(fs) == 1:
                add(fs[0])
            elif len(fs) == 2:
                add(Pair(*fs))
            else:
                add(rng.choice((Pair(Pair(fs[0], fs[1]), fs[2]), Pair(fs[0], Pair(fs[1], fs[2])))))
        out.extend((name, sig, s) for s in chosen)
    return out
